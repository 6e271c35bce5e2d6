#include "subfib/atlas.hpp"

#include <algorithm>
#include <set>
#include <thread>
#include <unordered_map>

#include "subfib/error.hpp"
#include "subfib/registry.hpp"

namespace subfib {
namespace {

// Class codes stored in the memo: 0 trivial, 1..6 registry index + 1,
// kUnknownBase + j for the worker's j-th unknown cycle.
constexpr std::int32_t kTrivial = 0;
constexpr std::int32_t kUnknownBase = 1000;
// Memo growth stops here; larger trajectories fall back to the local map.
constexpr std::size_t kMemoEntryLimit = std::size_t{1} << 25;

struct WorkerResult {
  std::vector<std::uint64_t> known_counts;
  std::uint64_t trivial = 0;
  std::vector<std::vector<Term>> unknown_cycles;
  std::vector<std::uint64_t> unknown_counts;
  std::vector<TermPair> unresolved;
};

class CensusWorker {
 public:
  CensusWorker(const CensusOptions& options) : options_(options) {
    result_.known_counts.assign(registry().size(), 0);
  }

  void run(Term a, Term b) {
    const std::int32_t code = classify_pair(a, b);
    if (code < 0) {
      result_.unresolved.emplace_back(a, b);
    } else if (code == kTrivial) {
      ++result_.trivial;
    } else if (code >= kUnknownBase) {
      ++result_.unknown_counts[static_cast<std::size_t>(code - kUnknownBase)];
    } else {
      ++result_.known_counts[static_cast<std::size_t>(code - 1)];
    }
  }

  WorkerResult take() { return std::move(result_); }

 private:
  static std::uint64_t key(Term a, Term b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  }

  bool memo_eligible(Term a, Term b) const {
    return options_.memoize && a <= options_.memo_cap && b <= options_.memo_cap;
  }

  // Final class code, or -1 when the step budget runs out.
  std::int32_t classify_pair(Term a, Term b) {
    path_.clear();
    local_.clear();
    std::int32_t code = -1;
    Term x = a;
    Term y = b;
    for (std::uint64_t step = 0;; ++step) {
      // Memo values >= 0 are final classes; negative values mark pairs on
      // the current path as -(index + 1).
      const bool eligible = memo_eligible(x, y);
      if (eligible) {
        auto it = memo_.find(key(x, y));
        if (it != memo_.end()) {
          code = it->second >= 0 ? static_cast<std::int32_t>(it->second)
                                 : close_cycle(static_cast<std::size_t>(-it->second - 1));
          break;
        }
      }
      if (!local_.empty()) {
        auto it = local_.find(TermPairKey{x, y});
        if (it != local_.end()) {
          code = close_cycle(it->second);
          break;
        }
      }
      if (step >= options_.max_steps) break;
      const std::size_t index = path_.size();
      path_.emplace_back(x, y);
      if (eligible && memo_.size() < kMemoEntryLimit) {
        memo_.emplace(key(x, y), -static_cast<std::int64_t>(index) - 1);
      } else {
        local_.emplace(TermPairKey{x, y}, index);
      }
      const Term z = next_term(x, y);
      x = y;
      y = z;
    }
    for (const auto& [px, py] : path_) {
      if (!memo_eligible(px, py)) continue;
      auto it = memo_.find(key(px, py));
      if (it == memo_.end()) continue;
      if (code < 0) {
        memo_.erase(it);
      } else {
        it->second = code;
      }
    }
    return code;
  }

  // The path from `first` onwards is one full cycle.
  std::int32_t close_cycle(std::size_t first) {
    std::vector<Term> terms;
    terms.reserve(path_.size() - first);
    for (std::size_t i = first; i < path_.size(); ++i) terms.push_back(path_[i].first);
    const std::vector<Term> canon = canonical_rotation(terms);
    if (canon.size() == 1) return kTrivial;
    const auto& known = registry();
    for (std::size_t i = 0; i < known.size(); ++i) {
      if (known[i].cycle.terms() == canon) return static_cast<std::int32_t>(i + 1);
    }
    for (std::size_t j = 0; j < result_.unknown_cycles.size(); ++j) {
      if (result_.unknown_cycles[j] == canon) return kUnknownBase + static_cast<std::int32_t>(j);
    }
    result_.unknown_cycles.push_back(canon);
    result_.unknown_counts.push_back(0);
    return kUnknownBase + static_cast<std::int32_t>(result_.unknown_cycles.size() - 1);
  }

  struct TermPairKey {
    Term a;
    Term b;
    bool operator==(const TermPairKey&) const = default;
  };
  struct TermPairKeyHash {
    std::size_t operator()(const TermPairKey& k) const noexcept {
      return std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(k.a) * 0x9E3779B97F4A7C15ULL ^
                                        static_cast<std::uint64_t>(k.b));
    }
  };

  const CensusOptions& options_;
  WorkerResult result_;
  std::unordered_map<std::uint64_t, std::int64_t> memo_;
  std::unordered_map<TermPairKey, std::size_t, TermPairKeyHash> local_;
  std::vector<TermPair> path_;
};

}  // namespace

std::uint64_t CensusReport::total() const {
  std::uint64_t sum = trivial + unknown + unresolved;
  for (const auto& [id, count] : known) sum += count;
  return sum;
}

std::vector<std::pair<std::string, std::uint64_t>> CensusReport::rows() const {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  if (trivial != 0) out.emplace_back("trivial", trivial);
  for (const auto& [id, count] : known) {
    if (count != 0) out.emplace_back(std::to_string(id), count);
  }
  if (unknown != 0) out.emplace_back("unknown", unknown);
  if (unresolved != 0) out.emplace_back("unresolved", unresolved);
  return out;
}

CensusReport census(Term lo, Term hi, const CensusOptions& options) {
  if (lo < 1 || hi < lo) throw DomainError("census: require 1 <= lo <= hi");
  if (hi > (Term{1} << 31)) throw DomainError("census: hi exceeds 2^31");
  if (options.memo_cap > (Term{1} << 31)) throw DomainError("census: memo cap exceeds 2^31");
  const unsigned workers = std::max(1U, options.workers);
  const auto& known = registry();

  std::vector<WorkerResult> results(workers);
  auto body = [&](unsigned w) {
    CensusWorker worker(options);
    for (Term a = lo + static_cast<Term>(w); a <= hi; a += static_cast<Term>(workers)) {
      for (Term b = lo; b <= hi; ++b) worker.run(a, b);
    }
    results[w] = worker.take();
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }

  CensusReport report;
  report.lo = lo;
  report.hi = hi;
  for (const KnownCycle& k : known) report.known[k.id] = 0;
  std::set<std::vector<Term>> unknown;
  for (const WorkerResult& r : results) {
    report.trivial += r.trivial;
    for (std::size_t i = 0; i < known.size(); ++i) report.known[known[i].id] += r.known_counts[i];
    for (std::size_t j = 0; j < r.unknown_cycles.size(); ++j) {
      unknown.insert(r.unknown_cycles[j]);
      report.unknown += r.unknown_counts[j];
    }
    report.unresolved += r.unresolved.size();
    report.unresolved_pairs.insert(report.unresolved_pairs.end(), r.unresolved.begin(), r.unresolved.end());
  }
  for (const auto& terms : unknown) report.unknown_cycles.emplace_back(terms);
  std::sort(report.unresolved_pairs.begin(), report.unresolved_pairs.end());
  return report;
}

}  // namespace subfib
