#pragma once

// Core value types for the toolkit: grids, Latin squares/rectangles,
// frequency squares, families, and tuple superposition.
//
// Conventions used throughout:
//   - symbols are 0-based ints in [0, order); text and JSON I/O are 1-based
//   - coordinates are 0-based (row, col); rendered output is 1-based
//   - supported orders are 1..64 so row/column bookkeeping fits in a u64 mask

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace latin {

inline constexpr int kMaxOrder = 64;

using Grid = std::vector<std::vector<int>>;
using Perm = std::vector<int>;

enum class ErrorCode {
  NotSquare,
  SymbolOutOfRange,
  RowDuplicate,
  ColDuplicate,
  UnsupportedOrder,
  BadShape,
  BadPermutation,
  NotPermutation,
  NotCoprime,
  NotPrimePower,
  UnevenClasses,
  EmptyFamily,
  EmptySelection,
  IndexOutOfRange,
  OrderMismatch,
  BadArity,
  ParamMismatch,
  OrderTooLarge,
  RowCount,
  ColCount,
  TupleCollision,
  SubsetNotOrthogonal,
  PairCount,
  FormatError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::RowDuplicate: return "RowDuplicate";
    case ErrorCode::ColDuplicate: return "ColDuplicate";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::NotPermutation: return "NotPermutation";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::UnevenClasses: return "UnevenClasses";
    case ErrorCode::EmptyFamily: return "EmptyFamily";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::RowCount: return "RowCount";
    case ErrorCode::ColCount: return "ColCount";
    case ErrorCode::TupleCollision: return "TupleCollision";
    case ErrorCode::SubsetNotOrthogonal: return "SubsetNotOrthogonal";
    case ErrorCode::PairCount: return "PairCount";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

struct CellRef {
  int row = -1;
  int col = -1;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

// Structured evidence for a failed check. Field meaning depends on the code:
//   RowDuplicate/ColDuplicate: a = earlier cell, b = offending cell, symbol set
//   SymbolOutOfRange:          b = offending cell, symbol = bad value
//   tuple collision:           a, b = the two cells, tuple = shared tuple
//   subset failure:            indices = the failing member subset
//   frequency pair count:      symbol, symbol_b, count, expected
struct Witness {
  ErrorCode code = ErrorCode::FormatError;
  CellRef a;
  CellRef b;
  int symbol = -1;
  int symbol_b = -1;
  long long count = -1;
  long long expected = -1;
  std::vector<int> tuple;
  std::vector<int> indices;

  std::string describe() const {
    std::ostringstream os;
    os << error_code_name(code);
    auto cell = [&](const CellRef& c) {
      os << " (" << c.row + 1 << "," << c.col + 1 << ")";
    };
    switch (code) {
      case ErrorCode::RowDuplicate:
        os << ": symbol " << symbol + 1 << " repeats in row " << b.row + 1
           << " at columns " << a.col + 1 << " and " << b.col + 1;
        break;
      case ErrorCode::ColDuplicate:
        os << ": symbol " << symbol + 1 << " repeats in column " << b.col + 1
           << " at rows " << a.row + 1 << " and " << b.row + 1;
        break;
      case ErrorCode::SymbolOutOfRange:
        os << ": value " << symbol + 1 << " at";
        cell(b);
        break;
      case ErrorCode::RowCount:
        os << ": symbol " << symbol + 1 << " occurs " << count
           << "x in row " << b.row + 1 << ", expected " << expected;
        break;
      case ErrorCode::ColCount:
        os << ": symbol " << symbol + 1 << " occurs " << count
           << "x in column " << b.col + 1 << ", expected " << expected;
        break;
      default:
        if (a.row >= 0) { os << ": cells"; cell(a); }
        if (b.row >= 0) { os << " and"; cell(b); }
        if (!tuple.empty()) {
          os << " share tuple (";
          for (size_t i = 0; i < tuple.size(); ++i)
            os << (i ? "," : "") << tuple[i] + 1;
          os << ")";
        }
        if (!indices.empty()) {
          os << ": member subset {";
          for (size_t i = 0; i < indices.size(); ++i)
            os << (i ? "," : "") << indices[i] + 1;
          os << "} fails";
        }
        if (count >= 0) os << ": count " << count << ", expected " << expected;
        break;
    }
    return os.str();
  }
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(ErrorCode code, std::string msg)
      : std::runtime_error(std::move(msg)), code_(code) {}
  ValidationError(Witness w) : std::runtime_error(w.describe()), code_(w.code), witness_(std::move(w)) {}
  ErrorCode code() const { return code_; }
  const std::optional<Witness>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::optional<Witness> witness_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw ValidationError(code, std::string(error_code_name(code)) + ": " + msg);
}

// Outcome of a predicate-style check: true, or false plus evidence.
struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  static Verdict ok() { return {}; }
  static Verdict fail(Witness w) { return {false, std::move(w)}; }
  explicit operator bool() const { return holds; }
};

namespace detail {

// Row-major scan for the first Latin violation: at each cell the checks are
// value range, then row duplicate, then column duplicate.
inline std::optional<Witness> first_latin_violation(const Grid& g) {
  const int s = static_cast<int>(g.size());
  if (s == 0) {
    Witness w;
    w.code = ErrorCode::NotSquare;
    return w;
  }
  if (s > kMaxOrder) {
    Witness w;
    w.code = ErrorCode::UnsupportedOrder;
    return w;
  }
  for (int r = 0; r < s; ++r) {
    if (static_cast<int>(g[r].size()) != s) {
      Witness w;
      w.code = ErrorCode::NotSquare;
      w.b = {r, static_cast<int>(g[r].size())};
      return w;
    }
  }
  std::vector<std::uint64_t> rmask(s, 0), cmask(s, 0);
  std::vector<std::vector<int>> rfirst(s, std::vector<int>(s, -1));
  std::vector<std::vector<int>> cfirst(s, std::vector<int>(s, -1));
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) {
      const int v = g[r][c];
      if (v < 0 || v >= s) {
        Witness w;
        w.code = ErrorCode::SymbolOutOfRange;
        w.b = {r, c};
        w.symbol = v;
        return w;
      }
      const std::uint64_t bit = 1ull << v;
      if (rmask[r] & bit) {
        Witness w;
        w.code = ErrorCode::RowDuplicate;
        w.a = {r, rfirst[r][v]};
        w.b = {r, c};
        w.symbol = v;
        return w;
      }
      if (cmask[c] & bit) {
        Witness w;
        w.code = ErrorCode::ColDuplicate;
        w.a = {cfirst[c][v], c};
        w.b = {r, c};
        w.symbol = v;
        return w;
      }
      rmask[r] |= bit;
      cmask[c] |= bit;
      rfirst[r][v] = c;
      cfirst[c][v] = r;
    }
  }
  return std::nullopt;
}

inline std::optional<Witness> first_rectangle_violation(const Grid& g, int symbols) {
  const int r = static_cast<int>(g.size());
  if (r == 0 || symbols <= 0 || symbols > kMaxOrder || r > symbols) {
    Witness w;
    w.code = ErrorCode::BadShape;
    return w;
  }
  const int c = static_cast<int>(g[0].size());
  if (c == 0 || c > symbols) {
    Witness w;
    w.code = ErrorCode::BadShape;
    return w;
  }
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(g[i].size()) != c) {
      Witness w;
      w.code = ErrorCode::BadShape;
      w.b = {i, static_cast<int>(g[i].size())};
      return w;
    }
  }
  std::vector<std::uint64_t> rmask(r, 0), cmask(c, 0);
  std::vector<std::vector<int>> rfirst(r, std::vector<int>(symbols, -1));
  std::vector<std::vector<int>> cfirst(c, std::vector<int>(symbols, -1));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      const int v = g[i][j];
      if (v < 0 || v >= symbols) {
        Witness w;
        w.code = ErrorCode::SymbolOutOfRange;
        w.b = {i, j};
        w.symbol = v;
        return w;
      }
      const std::uint64_t bit = 1ull << v;
      if (rmask[i] & bit) {
        Witness w;
        w.code = ErrorCode::RowDuplicate;
        w.a = {i, rfirst[i][v]};
        w.b = {i, j};
        w.symbol = v;
        return w;
      }
      if (cmask[j] & bit) {
        Witness w;
        w.code = ErrorCode::ColDuplicate;
        w.a = {cfirst[j][v], j};
        w.b = {i, j};
        w.symbol = v;
        return w;
      }
      rmask[i] |= bit;
      cmask[j] |= bit;
      rfirst[i][v] = j;
      cfirst[j][v] = i;
    }
  }
  return std::nullopt;
}

// Frequency square check: n = lambda * m, every symbol in [0, m) occurs
// exactly lambda times in each row and each column.
inline std::optional<Witness> first_frequency_violation(const Grid& g, int lambda) {
  const int n = static_cast<int>(g.size());
  if (n == 0 || n > kMaxOrder) {
    Witness w;
    w.code = n == 0 ? ErrorCode::NotSquare : ErrorCode::UnsupportedOrder;
    return w;
  }
  if (lambda <= 0 || n % lambda != 0) {
    Witness w;
    w.code = ErrorCode::ParamMismatch;
    return w;
  }
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(g[r].size()) != n) {
      Witness w;
      w.code = ErrorCode::NotSquare;
      w.b = {r, static_cast<int>(g[r].size())};
      return w;
    }
  }
  const int m = n / lambda;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int v = g[r][c];
      if (v < 0 || v >= m) {
        Witness w;
        w.code = ErrorCode::SymbolOutOfRange;
        w.b = {r, c};
        w.symbol = v;
        return w;
      }
    }
  }
  for (int r = 0; r < n; ++r) {
    std::vector<int> cnt(m, 0);
    for (int c = 0; c < n; ++c) ++cnt[g[r][c]];
    for (int v = 0; v < m; ++v) {
      if (cnt[v] != lambda) {
        Witness w;
        w.code = ErrorCode::RowCount;
        w.b = {r, -1};
        w.symbol = v;
        w.count = cnt[v];
        w.expected = lambda;
        return w;
      }
    }
  }
  for (int c = 0; c < n; ++c) {
    std::vector<int> cnt(m, 0);
    for (int r = 0; r < n; ++r) ++cnt[g[r][c]];
    for (int v = 0; v < m; ++v) {
      if (cnt[v] != lambda) {
        Witness w;
        w.code = ErrorCode::ColCount;
        w.b = {-1, c};
        w.symbol = v;
        w.count = cnt[v];
        w.expected = lambda;
        return w;
      }
    }
  }
  return std::nullopt;
}

inline void check_perm(const Perm& p, int n) {
  if (static_cast<int>(p.size()) != n) fail(ErrorCode::BadPermutation, "wrong length");
  std::uint64_t seen = 0;
  for (int v : p) {
    if (v < 0 || v >= n) fail(ErrorCode::BadPermutation, "entry out of range");
    if (seen & (1ull << v)) fail(ErrorCode::BadPermutation, "repeated entry");
    seen |= 1ull << v;
  }
}

}  // namespace detail

class LatinSquare {
 public:
  static LatinSquare from_grid(Grid cells) {
    if (auto w = detail::first_latin_violation(cells)) throw ValidationError(*w);
    return LatinSquare(std::move(cells));
  }

  int order() const { return static_cast<int>(cells_.size()); }
  int at(int r, int c) const { return cells_[r][c]; }
  const Grid& cells() const { return cells_; }

  friend bool operator==(const LatinSquare& x, const LatinSquare& y) {
    return x.cells_ == y.cells_;
  }

 private:
  explicit LatinSquare(Grid cells) : cells_(std::move(cells)) {}
  Grid cells_;
};

class LatinRectangle {
 public:
  static LatinRectangle from_grid(Grid cells, int symbols) {
    if (auto w = detail::first_rectangle_violation(cells, symbols)) throw ValidationError(*w);
    return LatinRectangle(std::move(cells), symbols);
  }

  int rows() const { return static_cast<int>(cells_.size()); }
  int cols() const { return static_cast<int>(cells_[0].size()); }
  int symbols() const { return symbols_; }
  int at(int r, int c) const { return cells_[r][c]; }
  const Grid& cells() const { return cells_; }

 private:
  LatinRectangle(Grid cells, int symbols) : cells_(std::move(cells)), symbols_(symbols) {}
  Grid cells_;
  int symbols_;
};

// Frequency square F(n; lambda): order n over m = n/lambda symbols, each
// appearing exactly lambda times per row and per column.
class FrequencySquare {
 public:
  static FrequencySquare from_grid(Grid cells, int lambda) {
    if (auto w = detail::first_frequency_violation(cells, lambda)) throw ValidationError(*w);
    return FrequencySquare(std::move(cells), lambda);
  }

  int side() const { return static_cast<int>(cells_.size()); }
  int multiplicity() const { return lambda_; }
  int symbols() const { return side() / lambda_; }
  int at(int r, int c) const { return cells_[r][c]; }
  const Grid& cells() const { return cells_; }

  friend bool operator==(const FrequencySquare& x, const FrequencySquare& y) {
    return x.lambda_ == y.lambda_ && x.cells_ == y.cells_;
  }

 private:
  FrequencySquare(Grid cells, int lambda) : cells_(std::move(cells)), lambda_(lambda) {}
  Grid cells_;
  int lambda_;
};

// How a square or family was produced, as an ordered parameter list.
// Token grammar: method(k=v;k=v), no spaces, parameter order preserved.
struct Provenance {
  std::string method = "external";
  std::vector<std::pair<std::string, std::string>> params;

  std::string token() const {
    std::string out = method;
    if (!params.empty()) {
      out += '(';
      for (size_t i = 0; i < params.size(); ++i) {
        if (i) out += ';';
        out += params[i].first + "=" + params[i].second;
      }
      out += ')';
    }
    return out;
  }

  static Provenance external() { return {}; }

  static Provenance parse(const std::string& tok) {
    Provenance p;
    auto open = tok.find('(');
    if (open == std::string::npos) {
      p.method = tok;
      return p;
    }
    if (tok.back() != ')') fail(ErrorCode::FormatError, "bad provenance token: " + tok);
    p.method = tok.substr(0, open);
    std::string body = tok.substr(open + 1, tok.size() - open - 2);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t semi = body.find(';', pos);
      if (semi == std::string::npos) semi = body.size();
      std::string item = body.substr(pos, semi - pos);
      size_t eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorCode::FormatError, "bad provenance item: " + item);
      p.params.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      pos = semi + 1;
    }
    return p;
  }
};

// A nonempty ordered list of Latin squares of one common order.
class SquareFamily {
 public:
  SquareFamily(std::vector<LatinSquare> members, Provenance prov = Provenance::external())
      : members_(std::move(members)), prov_(std::move(prov)) {
    if (members_.empty()) fail(ErrorCode::EmptyFamily, "family needs at least one member");
    for (const auto& m : members_)
      if (m.order() != members_[0].order())
        fail(ErrorCode::OrderMismatch, "family members must share one order");
  }

  int order() const { return members_[0].order(); }
  int size() const { return static_cast<int>(members_.size()); }
  const LatinSquare& member(int i) const {
    if (i < 0 || i >= size()) fail(ErrorCode::IndexOutOfRange, "member index " + std::to_string(i));
    return members_[i];
  }
  const std::vector<LatinSquare>& members() const { return members_; }
  const Provenance& provenance() const { return prov_; }

 private:
  std::vector<LatinSquare> members_;
  Provenance prov_;
};

// Cellwise superposition of t squares: an order x order array of ordered
// t-tuples. Stored flat, tuple (r,c) = data[(r*order+c)*arity ..].
class TupleArray {
 public:
  TupleArray(int order, int arity, std::vector<int> data)
      : order_(order), arity_(arity), data_(std::move(data)) {}

  int order() const { return order_; }
  int arity() const { return arity_; }
  std::span<const int> tuple(int r, int c) const {
    return {data_.data() + static_cast<size_t>(r * order_ + c) * arity_,
            static_cast<size_t>(arity_)};
  }
  const std::vector<int>& data() const { return data_; }

 private:
  int order_;
  int arity_;
  std::vector<int> data_;
};

// Normalizes and checks a member-index selection: indices must be distinct,
// in range, and are returned in ascending order.
inline std::vector<int> normalize_selection(const SquareFamily& fam, std::span<const int> indices) {
  if (indices.empty()) fail(ErrorCode::EmptySelection, "no member indices given");
  std::vector<int> sel(indices.begin(), indices.end());
  std::sort(sel.begin(), sel.end());
  for (size_t i = 0; i < sel.size(); ++i) {
    if (sel[i] < 0 || sel[i] >= fam.size())
      fail(ErrorCode::IndexOutOfRange, "member index " + std::to_string(sel[i]));
    if (i && sel[i] == sel[i - 1])
      fail(ErrorCode::IndexOutOfRange, "repeated member index " + std::to_string(sel[i]));
  }
  return sel;
}

inline TupleArray superpose(const SquareFamily& fam, std::span<const int> indices) {
  std::vector<int> sel = normalize_selection(fam, indices);
  const int s = fam.order();
  const int t = static_cast<int>(sel.size());
  std::vector<int> data(static_cast<size_t>(s) * s * t);
  size_t pos = 0;
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c)
      for (int idx : sel) data[pos++] = fam.member(idx).at(r, c);
  return TupleArray(s, t, std::move(data));
}

inline TupleArray superpose_all(const SquareFamily& fam) {
  std::vector<int> all(fam.size());
  std::iota(all.begin(), all.end(), 0);
  return superpose(fam, all);
}

// --- symbol/row/column transforms ---

inline LatinSquare transpose(const LatinSquare& sq) {
  const int s = sq.order();
  Grid g(s, std::vector<int>(s));
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) g[c][r] = sq.at(r, c);
  return LatinSquare::from_grid(std::move(g));
}

// relabel: symbol v becomes perm[v].
inline LatinSquare relabel(const LatinSquare& sq, const Perm& perm) {
  const int s = sq.order();
  detail::check_perm(perm, s);
  Grid g(s, std::vector<int>(s));
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) g[r][c] = perm[sq.at(r, c)];
  return LatinSquare::from_grid(std::move(g));
}

// permute_rows: new row i is old row perm[i].
inline LatinSquare permute_rows(const LatinSquare& sq, const Perm& perm) {
  const int s = sq.order();
  detail::check_perm(perm, s);
  Grid g(s);
  for (int r = 0; r < s; ++r) g[r] = sq.cells()[perm[r]];
  return LatinSquare::from_grid(std::move(g));
}

// permute_cols: new column j is old column perm[j].
inline LatinSquare permute_cols(const LatinSquare& sq, const Perm& perm) {
  const int s = sq.order();
  detail::check_perm(perm, s);
  Grid g(s, std::vector<int>(s));
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) g[r][c] = sq.at(r, perm[c]);
  return LatinSquare::from_grid(std::move(g));
}

// Leading r x c corner of a square, kept as a rectangle over s symbols.
inline LatinRectangle slice_rectangle(const LatinSquare& sq, int r, int c) {
  if (r < 1 || c < 1 || r > sq.order() || c > sq.order())
    fail(ErrorCode::BadShape, "rectangle slice out of bounds");
  Grid g(r, std::vector<int>(c));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) g[i][j] = sq.at(i, j);
  return LatinRectangle::from_grid(std::move(g), sq.order());
}

}  // namespace latin
