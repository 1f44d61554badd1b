#pragma once

// Decision procedures: Latin/rectangle/frequency validity, t-orthogonality
// of square selections, mutual orthogonality, and orthogonality degree.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>

#include "latin/core.hpp"

namespace latin {

inline Verdict is_latin(const Grid& g) {
  if (auto w = detail::first_latin_violation(g)) return Verdict::fail(*w);
  return Verdict::ok();
}

inline Verdict is_rectangle(const Grid& g, int symbols) {
  if (auto w = detail::first_rectangle_violation(g, symbols)) return Verdict::fail(*w);
  return Verdict::ok();
}

inline Verdict is_frequency(const Grid& g, int lambda) {
  if (auto w = detail::first_frequency_violation(g, lambda)) return Verdict::fail(*w);
  return Verdict::ok();
}

// Result of analyzing one superposition. defect = order^2 - distinct, and
// the selection is t-orthogonal exactly when defect is zero. When it is not,
// witness holds the lexicographically first pair of cells (row-major order
// on the first cell, then the second) sharing a tuple.
struct OrthoReport {
  int order = 0;
  int arity = 0;
  long long distinct = 0;
  long long defect = 0;
  bool t_orthogonal = false;
  bool all_same_or_distinct = true;
  std::optional<Witness> witness;
};

namespace detail {

// s^t <= 2^64 check; tuples pack into one u64 key in mixed radix base s.
inline bool key_fits_u64(int s, int t) {
  if (s <= 1) return true;
  unsigned __int128 acc = 1;
  for (int i = 0; i < t; ++i) {
    acc *= static_cast<unsigned>(s);
    if (acc > (static_cast<unsigned __int128>(1) << 64)) return false;
  }
  return true;
}

struct Occurrences {
  int first = -1;
  int second = -1;
};

template <typename MapT, typename KeyFn>
OrthoReport analyze_with(const TupleArray& arr, KeyFn key_of) {
  const int s = arr.order();
  const int t = arr.arity();
  OrthoReport rep;
  rep.order = s;
  rep.arity = t;

  MapT seen;
  const int cells = s * s;
  for (int i = 0; i < cells; ++i) {
    auto key = key_of(i);
    auto [it, inserted] = seen.try_emplace(std::move(key), Occurrences{i, -1});
    if (!inserted && it->second.second < 0) it->second.second = i;
  }
  rep.distinct = static_cast<long long>(seen.size());
  rep.defect = static_cast<long long>(cells) - rep.distinct;
  rep.t_orthogonal = rep.defect == 0;

  if (!rep.t_orthogonal) {
    Occurrences best;
    for (const auto& [key, occ] : seen) {
      if (occ.second < 0) continue;
      if (best.first < 0 || occ.first < best.first) best = occ;
    }
    Witness w;
    w.code = ErrorCode::TupleCollision;
    w.a = {best.first / s, best.first % s};
    w.b = {best.second / s, best.second % s};
    auto tup = arr.tuple(w.a.row, w.a.col);
    w.tuple.assign(tup.begin(), tup.end());
    rep.witness = std::move(w);
  }

  // diagnostic: every cell tuple is constant or has no repeated entry
  for (int i = 0; i < cells && rep.all_same_or_distinct; ++i) {
    auto tup = arr.tuple(i / s, i % s);
    std::uint64_t mask = 0;
    bool distinct = true, same = true;
    for (int v : tup) {
      if (v != tup[0]) same = false;
      if (mask & (1ull << v)) distinct = false;
      mask |= 1ull << v;
    }
    if (!same && !distinct) rep.all_same_or_distinct = false;
  }
  return rep;
}

}  // namespace detail

inline OrthoReport analyze_tuples(const TupleArray& arr) {
  const int s = arr.order();
  const int t = arr.arity();
  const auto& data = arr.data();
  if (detail::key_fits_u64(s, t)) {
    auto key_of = [&](int i) {
      std::uint64_t k = 0;
      const int* p = data.data() + static_cast<size_t>(i) * t;
      for (int j = 0; j < t; ++j) k = k * static_cast<std::uint64_t>(s) + static_cast<std::uint64_t>(p[j]);
      return k;
    };
    return detail::analyze_with<std::unordered_map<std::uint64_t, detail::Occurrences>>(arr, key_of);
  }
  // wide tuples: fall back to byte-string keys
  auto key_of = [&](int i) {
    const int* p = data.data() + static_cast<size_t>(i) * t;
    std::string k(static_cast<size_t>(t), '\0');
    for (int j = 0; j < t; ++j) k[j] = static_cast<char>(p[j]);
    return k;
  };
  return detail::analyze_with<std::map<std::string, detail::Occurrences>>(arr, key_of);
}

// t-orthogonality of the selected members. t = 1 is allowed; it reports
// s distinct tuples and is orthogonal only for s = 1.
inline OrthoReport t_orthogonal(const SquareFamily& fam, std::span<const int> indices) {
  return analyze_tuples(superpose(fam, indices));
}

inline long long defect(const SquareFamily& fam, std::span<const int> indices) {
  return t_orthogonal(fam, indices).defect;
}

namespace detail {

// Visits t-subsets of {0..n-1} in ascending lexicographic order.
template <typename Fn>
bool for_each_subset(int n, int t, Fn&& fn) {
  std::vector<int> idx(t);
  for (int i = 0; i < t; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return false;
    int i = t - 1;
    while (i >= 0 && idx[i] == n - t + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// Every t-subset of members, in ascending index order, must be t-orthogonal.
// On failure the witness carries the first failing subset.
inline Verdict mutually_t_orthogonal(const SquareFamily& fam, int t) {
  if (t < 2 || t > fam.size()) fail(ErrorCode::BadArity, "t must lie in [2, family size]");
  Verdict out = Verdict::ok();
  detail::for_each_subset(fam.size(), t, [&](const std::vector<int>& idx) {
    OrthoReport rep = t_orthogonal(fam, idx);
    if (!rep.t_orthogonal) {
      Witness w = *rep.witness;
      w.code = ErrorCode::SubsetNotOrthogonal;
      w.indices = idx;
      out = Verdict::fail(std::move(w));
      return false;
    }
    return true;
  });
  return out;
}

// Smallest t in [2, N] with the family mutually t-orthogonal, or nullopt.
// Mutual t-orthogonality is monotone in t (equal (t+1)-tuples have equal
// t-prefixes), so the top level decides existence and the upward scan finds
// the threshold.
inline std::optional<int> min_orthogonality_degree(const SquareFamily& fam) {
  const int n = fam.size();
  if (n < 2) return std::nullopt;
  if (!mutually_t_orthogonal(fam, n)) return std::nullopt;
  for (int t = 2; t < n; ++t)
    if (mutually_t_orthogonal(fam, t)) return t;
  return n;
}

// Frequency-square orthogonality: superposing F and G must produce every
// ordered symbol pair exactly lambda^2 times.
inline Verdict freq_orthogonal(const FrequencySquare& f, const FrequencySquare& g) {
  if (f.side() != g.side() || f.multiplicity() != g.multiplicity())
    fail(ErrorCode::ParamMismatch, "frequency squares must share side and multiplicity");
  const int n = f.side();
  const int m = f.symbols();
  const int want = f.multiplicity() * f.multiplicity();
  std::vector<std::vector<int>> cnt(m, std::vector<int>(m, 0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) ++cnt[f.at(r, c)][g.at(r, c)];
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (cnt[a][b] != want) {
        Witness w;
        w.code = ErrorCode::PairCount;
        w.symbol = a;
        w.symbol_b = b;
        w.count = cnt[a][b];
        w.expected = want;
        return Verdict::fail(std::move(w));
      }
  return Verdict::ok();
}

// A square is self-orthogonal when it is 2-orthogonal to its own transpose.
inline Verdict self_orthogonal(const LatinSquare& sq) {
  SquareFamily pair({sq, transpose(sq)});
  OrthoReport rep = t_orthogonal(pair, std::vector<int>{0, 1});
  if (rep.t_orthogonal) return Verdict::ok();
  return Verdict::fail(*rep.witness);
}

}  // namespace latin
