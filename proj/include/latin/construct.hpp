#pragma once

// Generators: modular additive/subtractive squares, the multiplicative grid
// mod s+1, row-shift families, GF(q) MOLS, cyclic development from a first
// row, and frequency-square inflation/collapse.
//
// Formulas are written over 1-based i, j with residue 0 printing as the
// modulus, which internally is a plain (value - 1) shift.

#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "latin/core.hpp"
#include "latin/gf.hpp"
#include "latin/verify.hpp"

namespace latin {

enum class Sign { kPlus, kMinus };

// cell(i,j) = (i + h*j) mod s (or i - h*j), 1-based, 0 rendered as s.
inline LatinSquare modular_additive(int s, int h, Sign sign = Sign::kPlus) {
  if (s < 1) fail(ErrorCode::ParamMismatch, "order must be positive");
  if (s > kMaxOrder) fail(ErrorCode::UnsupportedOrder, "order above " + std::to_string(kMaxOrder));
  const bool h_in_range = (h >= 1 && h <= s - 1) || (s == 1 && h == 1);
  if (!h_in_range) fail(ErrorCode::ParamMismatch, "h must lie in 1..s-1");
  if (std::gcd(h, s) != 1)
    fail(ErrorCode::NotCoprime, "gcd(" + std::to_string(h) + "," + std::to_string(s) + ") != 1");
  Grid g(s, std::vector<int>(s));
  for (int r = 0; r < s; ++r) {
    for (int c = 0; c < s; ++c) {
      const long long i = r + 1, j = c + 1;
      long long v = sign == Sign::kPlus ? i + h * j - 1 : i - h * j - 1;
      g[r][c] = static_cast<int>(((v % s) + s) % s);
    }
  }
  return LatinSquare::from_grid(std::move(g));
}

inline std::vector<int> coprime_multipliers(int s) {
  std::vector<int> hs;
  for (int h = 1; h < s; ++h)
    if (std::gcd(h, s) == 1) hs.push_back(h);
  return hs;
}

// All plus-squares for h coprime to s, ascending h.
inline SquareFamily additive_family(int s, Sign sign = Sign::kPlus) {
  if (s < 2) fail(ErrorCode::ParamMismatch, "family needs order >= 2");
  std::vector<LatinSquare> members;
  std::string hlist;
  for (int h : coprime_multipliers(s)) {
    members.push_back(modular_additive(s, h, sign));
    if (!hlist.empty()) hlist += ',';
    hlist += std::to_string(h);
  }
  Provenance prov;
  prov.method = sign == Sign::kPlus ? "additive" : "subtractive";
  prov.params = {{"s", std::to_string(s)}, {"h", hlist}};
  return SquareFamily(std::move(members), std::move(prov));
}

// cell(i,j) = (i*j) mod (s+1), 1-based, residue 0 rendered as s+1. Latin
// exactly when s+1 is prime; otherwise the verdict carries the failure and
// the raw grid stays inspectable.
struct MultiplicativeGrid {
  int order = 0;
  Grid cells;
  Verdict latin;

  LatinSquare square() const {
    if (!latin.holds) throw ValidationError(*latin.witness);
    return LatinSquare::from_grid(cells);
  }
};

inline MultiplicativeGrid modular_multiplicative(int s) {
  if (s < 1) fail(ErrorCode::ParamMismatch, "order must be positive");
  if (s > kMaxOrder) fail(ErrorCode::UnsupportedOrder, "order above " + std::to_string(kMaxOrder));
  MultiplicativeGrid out;
  out.order = s;
  out.cells.assign(s, std::vector<int>(s));
  const int n = s + 1;
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c)
      out.cells[r][c] = static_cast<int>((static_cast<long long>(r + 1) * (c + 1) - 1) % n);
  out.latin = is_latin(out.cells);
  return out;
}

// Member k takes row r from row (r + k) mod s of L; member 0 is L itself.
inline SquareFamily shift_family(const LatinSquare& L, int n, const std::string& base_tag = "external") {
  const int s = L.order();
  if (n != s) fail(ErrorCode::ParamMismatch, "shift modulus must equal the order");
  std::vector<LatinSquare> members;
  members.reserve(s);
  for (int k = 0; k < s; ++k) {
    Perm p(s);
    for (int r = 0; r < s; ++r) p[r] = (r + k) % s;
    members.push_back(permute_rows(L, p));
  }
  Provenance prov;
  prov.method = "shift-family";
  prov.params = {{"s", std::to_string(s)}, {"base", base_tag}};
  return SquareFamily(std::move(members), std::move(prov));
}

// MOLS over GF(q): one square per nonzero field element a, with
// cell(i,j) = a*g_i + g_j under the fixed element enumeration.
inline SquareFamily gf_mols(int q) {
  GaloisField f(q);
  std::vector<LatinSquare> members;
  members.reserve(q - 1);
  for (int a = 1; a < q; ++a) {
    Grid g(q, std::vector<int>(q));
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) g[i][j] = f.add(f.mul(a, i), j);
    members.push_back(LatinSquare::from_grid(std::move(g)));
  }
  Provenance prov;
  prov.method = "gf-mols";
  prov.params = {{"q", std::to_string(q)}};
  return SquareFamily(std::move(members), std::move(prov));
}

// Row k adds k to every first-row entry modulo n (entries 1-based).
inline LatinSquare develop_cyclic(std::span<const int> first_row) {
  const int n = static_cast<int>(first_row.size());
  if (n < 1) fail(ErrorCode::NotPermutation, "empty first row");
  if (n > kMaxOrder) fail(ErrorCode::UnsupportedOrder, "order above " + std::to_string(kMaxOrder));
  std::uint64_t seen = 0;
  for (int v : first_row) {
    if (v < 1 || v > n) fail(ErrorCode::NotPermutation, "entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
    if (seen & (1ull << (v - 1))) fail(ErrorCode::NotPermutation, "entry " + std::to_string(v) + " repeats");
    seen |= 1ull << (v - 1);
  }
  Grid g(n, std::vector<int>(n));
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) g[k][j] = (first_row[j] - 1 + k) % n;
  return LatinSquare::from_grid(std::move(g));
}

// Each cell of L becomes a lambda x lambda constant block.
inline FrequencySquare inflate_frequency(const LatinSquare& L, int lambda) {
  if (lambda < 1) fail(ErrorCode::ParamMismatch, "multiplicity must be positive");
  const int m = L.order();
  if (m > kMaxOrder / lambda) fail(ErrorCode::OrderTooLarge, "inflated side above " + std::to_string(kMaxOrder));
  const int n = m * lambda;
  Grid g(n, std::vector<int>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g[r][c] = L.at(r / lambda, c / lambda);
  return FrequencySquare::from_grid(std::move(g), lambda);
}

// Relabel symbols by their class; classes must partition the symbols into
// equally sized blocks (size = resulting multiplicity).
inline FrequencySquare collapse_symbols(const LatinSquare& L, std::span<const int> class_of) {
  const int m = L.order();
  if (static_cast<int>(class_of.size()) != m)
    fail(ErrorCode::ParamMismatch, "class map must cover all " + std::to_string(m) + " symbols");
  int classes = 0;
  for (int c : class_of) {
    if (c < 0 || c >= m) fail(ErrorCode::IndexOutOfRange, "class id " + std::to_string(c));
    classes = std::max(classes, c + 1);
  }
  std::vector<int> size_of(classes, 0);
  for (int c : class_of) ++size_of[c];
  const int lambda = m / classes;
  for (int c = 0; c < classes; ++c)
    if (size_of[c] != lambda || m % classes != 0)
      fail(ErrorCode::UnevenClasses, "classes must have equal size");
  Grid g(m, std::vector<int>(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) g[r][c] = class_of[L.at(r, c)];
  return FrequencySquare::from_grid(std::move(g), lambda);
}

// A generator invocation as data: method tag plus parameters. Families
// embed the equivalent token as provenance so any output can be rebuilt
// from its file alone. The d_i/d_h/d_j index maps are carried for
// completeness but only the identity maps are buildable.
struct ConstructionSpec {
  std::string method;  // additive|subtractive|multiplicative|shift-family|gf-mols|cyclic-development|inflate
  int s = 0;
  int h = 0;  // 0 means every coprime h (a family)
  int q = 0;
  int lambda = 0;
  std::vector<int> first_row;  // 1-based entries for cyclic-development
  std::string d_i = "identity";
  std::string d_h = "identity";
  std::string d_j = "identity";

  Provenance provenance() const {
    Provenance p;
    p.method = method;
    auto num = [](int v) { return std::to_string(v); };
    if (method == "additive" || method == "subtractive") {
      std::string hs;
      if (h > 0) {
        hs = num(h);
      } else {
        for (int k : coprime_multipliers(s)) {
          if (!hs.empty()) hs += ',';
          hs += num(k);
        }
      }
      p.params = {{"s", num(s)}, {"h", hs}};
    } else if (method == "multiplicative") {
      p.params = {{"s", num(s)}};
    } else if (method == "shift-family") {
      p.params = {{"s", num(s)}, {"base", "multiplicative"}};
    } else if (method == "gf-mols") {
      p.params = {{"q", num(q)}};
    } else if (method == "cyclic-development") {
      std::string row;
      for (int v : first_row) {
        if (!row.empty()) row += ',';
        row += num(v);
      }
      p.params = {{"n", num(static_cast<int>(first_row.size()))}, {"row", row}};
    } else if (method == "inflate") {
      p.params = {{"lambda", num(lambda)}, {"base", "external"}};
    }
    return p;
  }

  std::string cli_string() const {
    std::string out;
    if (method == "additive" || method == "subtractive") {
      out = "--additive " + std::to_string(s) + (h > 0 ? " --h " + std::to_string(h) : " --all-h");
      if (method == "subtractive") out += " --minus";
    } else if (method == "multiplicative") {
      out = "--multiplicative " + std::to_string(s);
    } else if (method == "shift-family") {
      out = "--multiplicative " + std::to_string(s) + " --shift";
    } else if (method == "gf-mols") {
      out = "--gf " + std::to_string(q);
    } else if (method == "cyclic-development") {
      out = "--develop <rowfile>";
    } else if (method == "inflate") {
      out = "--inflate " + std::to_string(lambda) + " <squarefile>";
    }
    return out;
  }
};

using Constructed = std::variant<LatinSquare, SquareFamily, FrequencySquare, MultiplicativeGrid>;

// Runs a spec. inflate needs the base square passed alongside.
inline Constructed build(const ConstructionSpec& spec,
                         const std::optional<LatinSquare>& base = std::nullopt) {
  if (spec.d_i != "identity" || spec.d_h != "identity" || spec.d_j != "identity")
    fail(ErrorCode::ParamMismatch, "only identity index maps are implemented");
  if (spec.method == "additive" || spec.method == "subtractive") {
    const Sign sign = spec.method == "additive" ? Sign::kPlus : Sign::kMinus;
    if (spec.h > 0) return modular_additive(spec.s, spec.h, sign);
    return additive_family(spec.s, sign);
  }
  if (spec.method == "multiplicative") return modular_multiplicative(spec.s);
  if (spec.method == "shift-family") {
    MultiplicativeGrid m = modular_multiplicative(spec.s);
    return shift_family(m.square(), spec.s, "multiplicative");
  }
  if (spec.method == "gf-mols") return gf_mols(spec.q);
  if (spec.method == "cyclic-development") return develop_cyclic(spec.first_row);
  if (spec.method == "inflate") {
    if (!base) fail(ErrorCode::ParamMismatch, "inflate needs a base square");
    return inflate_frequency(*base, spec.lambda);
  }
  fail(ErrorCode::ParamMismatch, "unknown method: " + spec.method);
}

}  // namespace latin
