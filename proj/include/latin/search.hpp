#pragma once

// Backtracking searches: Latin-square enumeration (row-at-a-time rectangle
// extension), orthogonal-mate search, maximum mutually-t-orthogonal subset,
// the staircase probe, and tiny-order exhaustive t-maxima.
//
// Determinism contract: cells are scanned row-major, symbol candidates
// ascending, so node counts are reproducible. Parallel mate search splits
// the tree at the first open row into per-subtree node counts and folds
// them back in subtree order, which makes outcome, payload, and node count
// identical to the serial run. Node budgets preserve this; a wall-clock
// deadline is inherently racy and only promises a budget-exhausted status.

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "latin/core.hpp"
#include "latin/verify.hpp"

namespace latin {

struct SearchBudget {
  std::uint64_t max_nodes = 1'000'000'000;
  double max_seconds = 300.0;
  int threads = 1;
};

enum class SearchStatus { kFound, kProvenAbsent, kBudgetExhausted };

inline const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kProvenAbsent: return "proven-absent";
    case SearchStatus::kBudgetExhausted: return "budget-exhausted";
  }
  return "unknown";
}

struct CountOutcome {
  SearchStatus status = SearchStatus::kFound;
  unsigned long long count = 0;
  unsigned long long nodes = 0;
};

struct MateOutcome {
  SearchStatus status = SearchStatus::kProvenAbsent;
  std::optional<LatinSquare> mate;
  unsigned long long nodes = 0;
};

struct SubsetOutcome {
  SearchStatus status = SearchStatus::kFound;
  std::vector<int> indices;
  unsigned long long nodes = 0;
};

struct TMaxOutcome {
  SearchStatus status = SearchStatus::kFound;
  int value = 0;
  std::vector<int> indices;          // lexicographically smallest maximum subset
  std::vector<LatinSquare> squares;  // the corresponding squares
  unsigned long long nodes = 0;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline Clock::time_point deadline_from(const SearchBudget& b) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(b.max_seconds));
}

// Row-major cell DFS over an s x s grid with row/column masks. Cells given
// in `preset` are fixed beforehand. A node is one accepted assignment.
struct EnumDfs {
  int s = 0;
  std::uint64_t full = 0;
  Grid g;
  std::vector<std::uint64_t> row, col;
  std::vector<char> preset;
  std::uint64_t nodes = 0;
  std::uint64_t node_limit = 0;
  Clock::time_point deadline;
  bool out_of_budget = false;
  bool sink_stopped = false;
  unsigned long long count = 0;
  const std::function<bool(const LatinSquare&)>* sink = nullptr;

  void init(int order) {
    s = order;
    full = order == 64 ? ~0ull : (1ull << order) - 1;
    g.assign(s, std::vector<int>(s, -1));
    row.assign(s, 0);
    col.assign(s, 0);
    preset.assign(static_cast<size_t>(s) * s, 0);
  }

  void put(int r, int c, int v, bool fixed) {
    g[r][c] = v;
    row[r] |= 1ull << v;
    col[c] |= 1ull << v;
    if (fixed) preset[static_cast<size_t>(r) * s + c] = 1;
  }

  bool budget_ok() {
    if (nodes >= node_limit) {
      out_of_budget = true;
      return false;
    }
    if ((nodes & 0x3ff) == 0 && Clock::now() > deadline) {
      out_of_budget = true;
      return false;
    }
    return true;
  }

  void run(size_t pos) {
    if (out_of_budget || sink_stopped) return;
    const size_t total = static_cast<size_t>(s) * s;
    while (pos < total && preset[pos]) ++pos;
    if (pos == total) {
      ++count;
      if (sink && !(*sink)(LatinSquare::from_grid(g))) sink_stopped = true;
      return;
    }
    const int r = static_cast<int>(pos) / s, c = static_cast<int>(pos) % s;
    std::uint64_t avail = full & ~(row[r] | col[c]);
    while (avail) {
      const int v = std::countr_zero(avail);
      avail &= avail - 1;
      if (!budget_ok()) return;
      ++nodes;
      const std::uint64_t bit = 1ull << v;
      g[r][c] = v;
      row[r] |= bit;
      col[c] |= bit;
      run(pos + 1);
      row[r] &= ~bit;
      col[c] &= ~bit;
      g[r][c] = -1;
      if (out_of_budget || sink_stopped) return;
    }
  }
};

inline unsigned long long factorial(int n) {
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned>(i);
  return f;
}

}  // namespace detail

enum class EnumerateMode { kCountAll, kCountReduced, kStream };

// Counts or streams every Latin square of order s in row-major lexicographic
// order. Orders above 7 are refused: the space is out of desk range, shrink
// the problem or use the budgeted mate/subset searches instead.
inline CountOutcome enumerate_latin(int s, EnumerateMode mode, const SearchBudget& budget = {},
                                    const std::function<bool(const LatinSquare&)>* sink = nullptr) {
  if (s < 1) fail(ErrorCode::ParamMismatch, "order must be positive");
  if (s > 7) fail(ErrorCode::OrderTooLarge, "enumeration supports s <= 7");

  // Full count at 6 and 7 goes through the reduced count: every square is a
  // unique relabeling + first-column permutation of a reduced one, so
  // all = reduced * s! * (s-1)!. Direct traversal stays in range for s <= 5.
  if (mode == EnumerateMode::kCountAll && s >= 6) {
    CountOutcome reduced = enumerate_latin(s, EnumerateMode::kCountReduced, budget);
    if (reduced.status == SearchStatus::kBudgetExhausted) return reduced;
    reduced.count *= detail::factorial(s) * detail::factorial(s - 1);
    return reduced;
  }

  detail::EnumDfs dfs;
  dfs.init(s);
  dfs.node_limit = budget.max_nodes;
  dfs.deadline = detail::deadline_from(budget);
  if (mode == EnumerateMode::kStream) dfs.sink = sink;
  if (mode == EnumerateMode::kCountReduced) {
    for (int c = 0; c < s; ++c) dfs.put(0, c, c, true);
    for (int r = 1; r < s; ++r) dfs.put(r, 0, r, true);
  }
  dfs.run(0);

  CountOutcome out;
  out.count = dfs.count;
  out.nodes = dfs.nodes;
  out.status = dfs.out_of_budget ? SearchStatus::kBudgetExhausted : SearchStatus::kFound;
  return out;
}

namespace detail {

struct MateSubtree {
  std::vector<int> row1;
  std::uint64_t prefix_nodes = 0;  // cumulative phase-1 nodes at this completion
  std::uint64_t sub_nodes = 0;
  std::uint64_t found_at = 0;
  bool found = false;
  bool incomplete = false;
  std::vector<int> mate_cells;
};

// Exhaustive DFS below one fixed second row; stops at its own first find or
// at `cap` nodes. Returns through the subtree record.
struct MateWorker {
  int s;
  const Grid* L;
  std::uint64_t full;

  void explore(MateSubtree& st, std::uint64_t cap, Clock::time_point deadline,
               const std::atomic<bool>* abort) const {
    std::vector<std::uint64_t> row(s, 0), col(s, 0), pair(s, 0);
    std::vector<int> cells(static_cast<size_t>(s) * s, -1);
    for (int c = 0; c < s; ++c) {
      cells[c] = c;
      row[0] |= 1ull << c;
      col[c] |= 1ull << c;
      pair[(*L)[0][c]] |= 1ull << c;
    }
    for (int c = 0; c < s; ++c) {
      const int v = st.row1[c];
      cells[s + c] = v;
      row[1] |= 1ull << v;
      col[c] |= 1ull << v;
      pair[(*L)[1][c]] |= 1ull << v;
    }

    std::uint64_t nodes = 0;
    bool done = false, capped = false;

    auto dfs = [&](auto&& self, size_t pos) -> void {
      if (done || capped) return;
      if (pos == static_cast<size_t>(s) * s) {
        st.found = true;
        st.found_at = nodes;
        st.mate_cells = cells;
        done = true;
        return;
      }
      const int r = static_cast<int>(pos) / s, c = static_cast<int>(pos) % s;
      std::uint64_t avail = full & ~(row[r] | col[c] | pair[(*L)[r][c]]);
      while (avail) {
        const int v = std::countr_zero(avail);
        avail &= avail - 1;
        if (nodes >= cap) {
          capped = true;
          return;
        }
        if ((nodes & 0xfff) == 0 &&
            (Clock::now() > deadline || (abort && abort->load(std::memory_order_relaxed)))) {
          capped = true;
          return;
        }
        ++nodes;
        const std::uint64_t bit = 1ull << v;
        cells[pos] = v;
        row[r] |= bit;
        col[c] |= bit;
        pair[(*L)[r][c]] |= bit;
        self(self, pos + 1);
        row[r] &= ~bit;
        col[c] &= ~bit;
        pair[(*L)[r][c]] &= ~bit;
        cells[pos] = -1;
        if (done || capped) return;
      }
    };
    dfs(dfs, static_cast<size_t>(s) * 2);
    st.sub_nodes = nodes;
    st.incomplete = capped;
  }
};

}  // namespace detail

// Searches for M Latin with all s^2 superposed (L,M) pairs distinct. The
// mate's first row is pinned to natural order (any mate can be relabeled to
// that form), so proven-absent covers the full space.
inline MateOutcome orthogonal_mate_search(const LatinSquare& L, const SearchBudget& budget = {}) {
  const int s = L.order();
  MateOutcome out;

  if (s == 1) {
    out.status = SearchStatus::kFound;
    out.mate = LatinSquare::from_grid({{0}});
    out.nodes = 0;
    return out;
  }

  const std::uint64_t full = s == 64 ? ~0ull : (1ull << s) - 1;
  const std::uint64_t limit = budget.max_nodes;
  const auto deadline = detail::deadline_from(budget);
  const int threads = std::max(1, std::min(budget.threads, 64));

  // Masks with the first row preset to 0..s-1.
  std::vector<std::uint64_t> col0(s, 0), pair0(s, 0);
  for (int c = 0; c < s; ++c) {
    col0[c] |= 1ull << c;
    pair0[L.at(0, c)] |= 1ull << c;
  }

  // Phase 1: enumerate completions of the second row; each one roots a
  // disjoint subtree. prefix_nodes records the running phase-1 node count
  // at each completion so the serial interleaving can be reconstructed.
  std::uint64_t p_nodes = 0;
  bool p_overflow = false, p_timeout = false;
  std::vector<detail::MateSubtree> subtrees;
  {
    std::vector<int> row1(s, -1);
    std::uint64_t rmask = 0;
    std::vector<std::uint64_t> cmask = col0, pmask = pair0;
    auto dfs = [&](auto&& self, int c) -> void {
      if (p_overflow || p_timeout) return;
      if (c == s) {
        detail::MateSubtree st;
        st.row1 = row1;
        st.prefix_nodes = p_nodes;
        subtrees.push_back(std::move(st));
        return;
      }
      std::uint64_t avail = full & ~(rmask | cmask[c] | pmask[L.at(1, c)]);
      while (avail) {
        const int v = std::countr_zero(avail);
        avail &= avail - 1;
        if (p_nodes >= limit) {
          p_overflow = true;
          return;
        }
        if ((p_nodes & 0xfff) == 0 && detail::Clock::now() > deadline) {
          p_timeout = true;
          return;
        }
        ++p_nodes;
        const std::uint64_t bit = 1ull << v;
        row1[c] = v;
        rmask |= bit;
        cmask[c] |= bit;
        pmask[L.at(1, c)] |= bit;
        self(self, c + 1);
        rmask &= ~bit;
        cmask[c] &= ~bit;
        pmask[L.at(1, c)] &= ~bit;
        row1[c] = -1;
        if (p_overflow || p_timeout) return;
      }
    };
    dfs(dfs, 0);
  }
  if (p_overflow) {
    // The serial run interleaves subtrees between these nodes, so it can
    // only have exhausted the budget sooner.
    out.status = SearchStatus::kBudgetExhausted;
    out.nodes = limit;
    return out;
  }
  if (p_timeout) {
    out.status = SearchStatus::kBudgetExhausted;
    out.nodes = p_nodes;
    return out;
  }

  // Phase 2: explore subtrees, then fold results in subtree order. Workers
  // past the first find can stop early; their records are never consulted.
  std::atomic<size_t> next{0};
  std::atomic<bool> abort{false};
  std::atomic<size_t> first_found{subtrees.size()};
  auto work = [&] {
    detail::MateWorker w{s, &L.cells(), full};
    while (true) {
      const size_t k = next.fetch_add(1);
      if (k >= subtrees.size()) return;
      if (k > first_found.load(std::memory_order_relaxed)) {
        subtrees[k].incomplete = true;
        continue;
      }
      detail::MateSubtree& st = subtrees[k];
      const std::uint64_t cap = st.prefix_nodes >= limit ? 0 : limit - st.prefix_nodes + 1;
      w.explore(st, cap, deadline, &abort);
      if (st.found) {
        size_t cur = first_found.load();
        while (k < cur && !first_found.compare_exchange_weak(cur, k)) {
        }
      }
    }
  };
  if (threads == 1 || subtrees.size() <= 1) {
    // In-place serial pass; identical accounting, no thread overhead.
    detail::MateWorker w{s, &L.cells(), full};
    for (size_t k = 0; k < subtrees.size(); ++k) {
      detail::MateSubtree& st = subtrees[k];
      const std::uint64_t cap = st.prefix_nodes >= limit ? 0 : limit - st.prefix_nodes + 1;
      w.explore(st, cap, deadline, nullptr);
      if (st.found) break;  // later subtrees are never consulted by the fold
    }
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // Fold: replay the serial order (phase-1 segment k, then subtree k).
  std::uint64_t cum = 0, prev_prefix = 0;
  for (auto& st : subtrees) {
    const std::uint64_t seg = st.prefix_nodes - prev_prefix;
    prev_prefix = st.prefix_nodes;
    if (cum + seg > limit) {
      out.status = SearchStatus::kBudgetExhausted;
      out.nodes = limit;
      return out;
    }
    cum += seg;
    if (st.found) {
      if (cum + st.found_at > limit) {
        out.status = SearchStatus::kBudgetExhausted;
        out.nodes = limit;
        return out;
      }
      Grid g(s, std::vector<int>(s));
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) g[r][c] = st.mate_cells[static_cast<size_t>(r) * s + c];
      out.status = SearchStatus::kFound;
      out.mate = LatinSquare::from_grid(std::move(g));
      out.nodes = cum + st.found_at;
      return out;
    }
    if (st.incomplete) {
      // Node-capped subtrees imply the serial run ran out here too; a
      // deadline abort reports whatever was actually explored.
      out.status = SearchStatus::kBudgetExhausted;
      out.nodes = std::min(limit, cum + st.sub_nodes);
      return out;
    }
    cum += st.sub_nodes;
    if (cum > limit) {
      out.status = SearchStatus::kBudgetExhausted;
      out.nodes = limit;
      return out;
    }
  }
  out.status = SearchStatus::kProvenAbsent;
  out.nodes = cum;
  return out;
}

namespace detail {

// Shared by subset searches: checks that the selected members, extended by
// `next`, stay mutually t-orthogonal (only subsets containing `next` are
// new, so only those are checked).
class MutualExtender {
 public:
  MutualExtender(const std::vector<const LatinSquare*>& squares, int t)
      : squares_(squares), t_(t) {}

  bool extension_ok(const std::vector<int>& chosen, int next) {
    if (static_cast<int>(chosen.size()) + 1 < t_) return true;
    std::vector<int> subset(t_ - 1);
    return for_each_subset(static_cast<int>(chosen.size()), t_ - 1, [&](const std::vector<int>& pick) {
      for (int i = 0; i < t_ - 1; ++i) subset[i] = chosen[pick[i]];
      subset.push_back(next);
      const bool ok = subset_orthogonal(subset);
      subset.pop_back();
      return ok;
    });
  }

  bool subset_orthogonal(const std::vector<int>& idx) {
    auto [it, fresh] = memo_.try_emplace(idx, false);
    if (!fresh) return it->second;
    const int s = squares_[idx[0]]->order();
    const int t = static_cast<int>(idx.size());
    std::vector<int> data;
    data.reserve(static_cast<size_t>(s) * s * t);
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < s; ++c)
        for (int m : idx) data.push_back(squares_[m]->at(r, c));
    it->second = analyze_tuples(TupleArray(s, t, std::move(data))).t_orthogonal;
    return it->second;
  }

 private:
  const std::vector<const LatinSquare*>& squares_;
  int t_;
  std::map<std::vector<int>, bool> memo_;
};

struct SubsetDfs {
  int n = 0, t = 0;
  MutualExtender* ext = nullptr;
  std::vector<int> chosen, best;
  std::uint64_t nodes = 0, node_limit = 0;
  Clock::time_point deadline;
  bool out_of_budget = false;

  // Include-first over ascending indices: the first maximum found is the
  // lexicographically smallest one.
  void run(int from) {
    if (out_of_budget) return;
    if (static_cast<int>(chosen.size()) > static_cast<int>(best.size())) best = chosen;
    for (int c = from; c < n; ++c) {
      if (static_cast<int>(chosen.size()) + (n - c) <= static_cast<int>(best.size())) return;
      if (nodes >= node_limit) {
        out_of_budget = true;
        return;
      }
      if ((nodes & 0xff) == 0 && Clock::now() > deadline) {
        out_of_budget = true;
        return;
      }
      ++nodes;
      if (ext->extension_ok(chosen, c)) {
        chosen.push_back(c);
        run(c + 1);
        chosen.pop_back();
        if (out_of_budget) return;
      }
    }
  }
};

}  // namespace detail

// Maximum-cardinality subset of the candidates that is mutually
// t-orthogonal (subsets smaller than t qualify vacuously). Ties go to the
// lexicographically smallest index set.
inline SubsetOutcome max_mutual_subset(const SquareFamily& candidates, int t,
                                       const SearchBudget& budget = {}) {
  if (t < 2) fail(ErrorCode::BadArity, "t must be at least 2");
  std::vector<const LatinSquare*> ptrs;
  ptrs.reserve(candidates.size());
  for (const auto& m : candidates.members()) ptrs.push_back(&m);

  detail::MutualExtender ext(ptrs, t);
  detail::SubsetDfs dfs;
  dfs.n = candidates.size();
  dfs.t = t;
  dfs.ext = &ext;
  dfs.node_limit = budget.max_nodes;
  dfs.deadline = detail::deadline_from(budget);
  dfs.run(0);

  SubsetOutcome out;
  out.indices = dfs.best;
  out.nodes = dfs.nodes;
  out.status = dfs.out_of_budget ? SearchStatus::kBudgetExhausted : SearchStatus::kFound;
  return out;
}

// Staircase of mutually_t_orthogonal over t = 2..N, its threshold, and when
// the threshold exceeds 2 a converse counterexample: a threshold-sized
// subset that passes although not all of its (t-1)-subsets do.
struct StaircaseReport {
  int family_size = 0;
  std::vector<std::pair<int, bool>> levels;  // (t, holds)
  std::optional<int> threshold;
  struct Converse {
    std::vector<int> subset;
    std::vector<int> failing_subsubset;
  };
  std::optional<Converse> converse;
};

inline StaircaseReport conjecture_probe(const SquareFamily& fam) {
  const int n = fam.size();
  if (n < 2) fail(ErrorCode::BadArity, "probe needs at least two members");
  StaircaseReport rep;
  rep.family_size = n;
  for (int t = 2; t <= n; ++t) {
    const bool holds = mutually_t_orthogonal(fam, t).holds;
    rep.levels.emplace_back(t, holds);
    if (holds && !rep.threshold) rep.threshold = t;
  }
  bool seen_true = false;
  for (auto [t, holds] : rep.levels) {
    if (seen_true && !holds)
      fail(ErrorCode::ParamMismatch, "staircase monotonicity violated (internal error)");
    seen_true = seen_true || holds;
  }
  if (rep.threshold && *rep.threshold > 2) {
    const int t = *rep.threshold;
    detail::for_each_subset(n, t, [&](const std::vector<int>& idx) {
      if (!t_orthogonal(fam, idx).t_orthogonal) return true;  // keep scanning
      bool all_pass = true;
      std::vector<int> failing;
      detail::for_each_subset(t, t - 1, [&](const std::vector<int>& pick) {
        std::vector<int> inner;
        for (int p : pick) inner.push_back(idx[p]);
        if (!t_orthogonal(fam, inner).t_orthogonal) {
          all_pass = false;
          failing = inner;
          return false;
        }
        return true;
      });
      if (!all_pass) {
        rep.converse = StaircaseReport::Converse{idx, failing};
        return false;
      }
      return true;
    });
  }
  return rep;
}

namespace detail {

// Fixed-capacity bitset over candidate squares.
struct CandSet {
  std::vector<std::uint64_t> w;

  explicit CandSet(int n = 0) : w((n + 63) / 64, 0) {}
  void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void intersect(const CandSet& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
  }
  void clear_below(int i) {  // drop indices <= i
    for (int j = 0; j <= i >> 6 && j < static_cast<int>(w.size()); ++j) {
      if (j < i >> 6)
        w[j] = 0;
      else
        w[j] &= ~((i & 63) == 63 ? ~0ull : ((1ull << ((i & 63) + 1)) - 1));
    }
  }
  int count() const {
    int n = 0;
    for (auto x : w) n += std::popcount(x);
    return n;
  }
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (size_t j = 0; j < w.size(); ++j) {
      std::uint64_t x = w[j];
      while (x) {
        fn(static_cast<int>(j * 64) + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
};

// Branch and bound over a symmetric "extension allowed" structure: level-2
// (graph) or level-3 (triple table) compatibility, vacuous below level t.
struct TMaxDfs {
  int n = 0, t = 0;
  const std::vector<CandSet>* adj = nullptr;           // t = 2: adj[i]
  const std::vector<std::vector<CandSet>>* tri = nullptr;  // t = 3: tri[a][b], a < b
  std::vector<int> chosen, best;
  std::uint64_t nodes = 0, node_limit = 0;
  Clock::time_point deadline;
  bool out_of_budget = false;

  void run(const CandSet& allowed) {
    if (out_of_budget) return;
    if (static_cast<int>(chosen.size()) > static_cast<int>(best.size())) best = chosen;
    if (static_cast<int>(chosen.size()) + allowed.count() <= static_cast<int>(best.size())) return;
    std::vector<int> cands;
    allowed.for_each([&](int c) { cands.push_back(c); });
    for (size_t ci = 0; ci < cands.size(); ++ci) {
      const int c = cands[ci];
      if (static_cast<int>(chosen.size() + cands.size() - ci) <= static_cast<int>(best.size()))
        return;
      if (nodes >= node_limit) {
        out_of_budget = true;
        return;
      }
      if ((nodes & 0x3ff) == 0 && Clock::now() > deadline) {
        out_of_budget = true;
        return;
      }
      ++nodes;
      CandSet next = allowed;
      next.clear_below(c);
      if (t == 2) {
        next.intersect((*adj)[c]);
      } else {
        if (!chosen.empty())
          for (int x : chosen) next.intersect((*tri)[std::min(x, c)][std::max(x, c)]);
      }
      chosen.push_back(c);
      run(next);
      chosen.pop_back();
      if (out_of_budget) return;
    }
  }
};

}  // namespace detail

// Exhaustive maximum over every order-s Latin square: enumerate them all,
// then search for the largest mutually t-orthogonal subset. t = 2 and 3 use
// precomputed pair/triple compatibility; larger t falls back to the generic
// subset search. Practical only for s <= 4 (576 squares).
inline TMaxOutcome exhaustive_t_max(int s, int t, const SearchBudget& budget = {}) {
  if (s > 4) fail(ErrorCode::OrderTooLarge, "exhaustive maxima supported for s <= 4");
  if (t < 2) fail(ErrorCode::BadArity, "t must be at least 2");

  std::vector<LatinSquare> all;
  std::function<bool(const LatinSquare&)> sink = [&](const LatinSquare& sq) {
    all.push_back(sq);
    return true;
  };
  CountOutcome en = enumerate_latin(s, EnumerateMode::kStream, budget, &sink);
  TMaxOutcome out;
  out.nodes = en.nodes;
  if (en.status == SearchStatus::kBudgetExhausted) {
    out.status = en.status;
    return out;
  }
  const int n = static_cast<int>(all.size());
  SquareFamily fam(all);

  if (t > 3) {
    SearchBudget inner = budget;
    inner.max_nodes = budget.max_nodes > en.nodes ? budget.max_nodes - en.nodes : 0;
    SubsetOutcome sub = max_mutual_subset(fam, t, inner);
    out.status = sub.status;
    out.value = static_cast<int>(sub.indices.size());
    out.indices = sub.indices;
    for (int i : sub.indices) out.squares.push_back(fam.member(i));
    out.nodes = en.nodes + sub.nodes;
    return out;
  }

  // Pack cells for branch-free tuple keys (s <= 4: two bits per symbol).
  std::vector<std::array<unsigned char, 16>> cells(n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < s; ++c) cells[i][static_cast<size_t>(r) * s + c] =
          static_cast<unsigned char>(all[i].at(r, c));
  const int sq = s * s;

  detail::TMaxDfs dfs;
  dfs.n = n;
  dfs.t = t;
  dfs.node_limit = budget.max_nodes > en.nodes ? budget.max_nodes - en.nodes : 0;
  dfs.deadline = detail::deadline_from(budget);

  std::vector<detail::CandSet> adj;
  std::vector<std::vector<detail::CandSet>> tri;
  if (t == 2) {
    adj.assign(n, detail::CandSet(n));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        std::uint32_t seen = 0;
        bool ok = true;
        for (int i = 0; i < sq && ok; ++i) {
          const std::uint32_t key = 1u << ((cells[a][i] << 2) | cells[b][i]);
          ok = !(seen & key);
          seen |= key;
        }
        if (ok) {
          adj[a].set(b);
          adj[b].set(a);
        }
      }
    dfs.adj = &adj;
  } else {
    tri.assign(n, {});
    for (int a = 0; a < n; ++a) tri[a].assign(n, detail::CandSet(n));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          std::uint64_t seen = 0;
          bool ok = true;
          for (int i = 0; i < sq && ok; ++i) {
            const std::uint64_t key = 1ull << ((cells[a][i] << 4) | (cells[b][i] << 2) | cells[c][i]);
            ok = !(seen & key);
            seen |= key;
          }
          if (ok) {
            tri[a][b].set(c);
            tri[a][c].set(b);
            tri[b][c].set(a);
          }
        }
    dfs.tri = &tri;
  }

  detail::CandSet root(n);
  for (int i = 0; i < n; ++i) root.set(i);
  dfs.run(root);

  out.status = dfs.out_of_budget ? SearchStatus::kBudgetExhausted : SearchStatus::kFound;
  out.value = static_cast<int>(dfs.best.size());
  out.indices = dfs.best;
  for (int i : dfs.best) out.squares.push_back(fam.member(i));
  out.nodes = en.nodes + dfs.nodes;
  return out;
}

}  // namespace latin
