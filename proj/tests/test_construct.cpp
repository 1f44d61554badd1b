#include <numeric>
#include <random>
#include <variant>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "latin/construct.hpp"
#include "latin/table.hpp"
#include "util.hpp"

using namespace latin;
using testutil::code_of;
using testutil::error_of;
using testutil::rows;

TEST_CASE("additive squares match the worked examples") {
  REQUIRE(modular_additive(3, 1).cells() == rows({"2 3 1", "3 1 2", "1 2 3"}));
  REQUIRE(modular_additive(3, 2).cells() == rows({"3 2 1", "1 3 2", "2 1 3"}));
  REQUIRE(modular_additive(5, 1).cells()[0] == rows({"2 3 4 5 1"})[0]);
  REQUIRE(modular_additive(5, 2).cells()[0] == rows({"3 5 2 4 1"})[0]);
  REQUIRE(modular_additive(1, 1).cells() == Grid{{0}});
}

TEST_CASE("additive parameters are validated") {
  REQUIRE(code_of([] { modular_additive(4, 2); }) == ErrorCode::NotCoprime);
  REQUIRE(code_of([] { modular_additive(6, 3); }) == ErrorCode::NotCoprime);
  REQUIRE(code_of([] { modular_additive(5, 0); }) == ErrorCode::ParamMismatch);
  REQUIRE(code_of([] { modular_additive(5, 5); }) == ErrorCode::ParamMismatch);
  REQUIRE(code_of([] { modular_additive(0, 1); }) == ErrorCode::ParamMismatch);
  REQUIRE(code_of([] { modular_additive(65, 1); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("both additive signs produce squares for every coprime multiplier") {
  for (int s = 1; s <= 64; ++s) {
    for (int h = 1; h < std::max(2, s); ++h) {
      if (std::gcd(h, s) != 1) continue;
      if (s > 1 && h >= s) continue;
      REQUIRE(modular_additive(s, h, Sign::kPlus).order() == s);
      REQUIRE(modular_additive(s, h, Sign::kMinus).order() == s);
    }
  }
}

TEST_CASE("the minus square is the plus square with columns permuted") {
  for (int s = 2; s <= 12; ++s) {
    for (int h : coprime_multipliers(s)) {
      const Grid plus = modular_additive(s, h, Sign::kPlus).cells();
      const Grid minus = modular_additive(s, h, Sign::kMinus).cells();
      auto column = [s](const Grid& g, int c) {
        std::vector<int> col(s);
        for (int r = 0; r < s; ++r) col[r] = g[r][c];
        return col;
      };
      std::vector<bool> used(s, false);
      for (int c = 0; c < s; ++c) {
        int match = -1;
        for (int d = 0; d < s; ++d)
          if (!used[d] && column(plus, d) == column(minus, c)) {
            match = d;
            break;
          }
        CAPTURE(s, h, c);
        REQUIRE(match >= 0);
        used[match] = true;
      }
    }
  }
}

TEST_CASE("additive families enumerate coprime multipliers in ascending order") {
  REQUIRE(coprime_multipliers(7) == std::vector<int>{1, 2, 3, 4, 5, 6});
  REQUIRE(coprime_multipliers(8) == std::vector<int>{1, 3, 5, 7});
  REQUIRE(coprime_multipliers(12) == std::vector<int>{1, 5, 7, 11});
  REQUIRE(coprime_multipliers(2) == std::vector<int>{1});

  SquareFamily fam = additive_family(5);
  REQUIRE(fam.size() == 4);
  REQUIRE(fam.provenance().token() == "additive(s=5;h=1,2,3,4)");
  for (int i = 0; i < 4; ++i) REQUIRE(fam.member(i) == modular_additive(5, i + 1));

  REQUIRE(additive_family(5, Sign::kMinus).provenance().token() == "subtractive(s=5;h=1,2,3,4)");
  REQUIRE(code_of([] { additive_family(1); }) == ErrorCode::ParamMismatch);
}

TEST_CASE("multiplicative grids match the worked examples") {
  MultiplicativeGrid m4 = modular_multiplicative(4);
  REQUIRE(m4.latin.holds);
  REQUIRE(m4.cells == rows({"1 2 3 4", "2 4 1 3", "3 1 4 2", "4 3 2 1"}));
  REQUIRE(m4.square().cells() == m4.cells);

  MultiplicativeGrid m6 = modular_multiplicative(6);
  REQUIRE(m6.latin.holds);
  REQUIRE(m6.cells[1] == rows({"2 4 6 1 3 5"})[0]);

  REQUIRE(modular_multiplicative(1).latin.holds);
  REQUIRE(code_of([] { modular_multiplicative(0); }) == ErrorCode::ParamMismatch);
  REQUIRE(code_of([] { modular_multiplicative(65); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("a composite modulus breaks the multiplicative grid with a pinned witness") {
  MultiplicativeGrid m5 = modular_multiplicative(5);
  REQUIRE_FALSE(m5.latin.holds);
  const Witness& w = *m5.latin.witness;
  REQUIRE(w.code == ErrorCode::SymbolOutOfRange);
  REQUIRE(w.b == CellRef{1, 2});
  REQUIRE(w.symbol == 5);
  REQUIRE(w.describe() == "SymbolOutOfRange: value 6 at (2,3)");
  REQUIRE(code_of([&] { m5.square(); }) == ErrorCode::SymbolOutOfRange);
}

TEST_CASE("the multiplicative grid is latin exactly when the modulus is prime") {
  for (int s = 1; s <= 63; ++s) {
    CAPTURE(s);
    REQUIRE(modular_multiplicative(s).latin.holds == is_prime(s + 1));
  }
}

TEST_CASE("composite-modulus columns repeat by the gcd rule") {
  // column j with g = gcd(j, s+1) > 1: rendered multiples of g below s+1
  // appear g times, the zero residue (rendered s+1) appears g-1 times, and
  // nothing else appears; coprime columns are permutations of 1..s.
  for (int s = 3; s <= 29; ++s) {
    const int n = s + 1;
    if (is_prime(n)) continue;
    const Grid& g = modular_multiplicative(s).cells;
    for (int c = 0; c < s; ++c) {
      const int j = c + 1;
      const int d = std::gcd(j, n);
      std::vector<int> count(n + 1, 0);
      for (int r = 0; r < s; ++r) ++count[g[r][c] + 1];
      CAPTURE(s, j, d);
      if (d == 1) {
        for (int v = 1; v <= s; ++v) REQUIRE(count[v] == 1);
        REQUIRE(count[n] == 0);
      } else {
        for (int v = 1; v <= n; ++v) {
          if (v == n)
            REQUIRE(count[v] == d - 1);
          else if (v % d == 0)
            REQUIRE(count[v] == d);
          else
            REQUIRE(count[v] == 0);
        }
      }
    }
  }
}

TEST_CASE("shift families cycle the base square's rows") {
  LatinSquare base = modular_multiplicative(4).square();
  SquareFamily fam = shift_family(base, 4, "multiplicative");
  REQUIRE(fam.size() == 4);
  REQUIRE(fam.provenance().token() == "shift-family(s=4;base=multiplicative)");
  REQUIRE(fam.member(0) == base);
  REQUIRE(fam.member(1).cells() == rows({"2 4 1 3", "3 1 4 2", "4 3 2 1", "1 2 3 4"}));
  for (int k = 0; k < 4; ++k)
    for (int r = 0; r < 4; ++r) REQUIRE(fam.member(k).cells()[r] == base.cells()[(r + k) % 4]);

  SquareFamily s6 = shift_family(modular_multiplicative(6).square(), 6, "multiplicative");
  REQUIRE(s6.member(3).cells()[0] == rows({"4 1 5 2 6 3"})[0]);

  REQUIRE(code_of([&] { shift_family(base, 3); }) == ErrorCode::ParamMismatch);
}

TEST_CASE("field families match the published side-4 triple") {
  SquareFamily fam = gf_mols(4);
  REQUIRE(fam.size() == 3);
  REQUIRE(fam.provenance().token() == "gf-mols(q=4)");
  REQUIRE(fam.member(0).cells() == rows({"1 2 3 4", "2 1 4 3", "3 4 1 2", "4 3 2 1"}));
  REQUIRE(fam.member(1).cells() == rows({"1 2 3 4", "3 4 1 2", "4 3 2 1", "2 1 4 3"}));
  REQUIRE(fam.member(2).cells() == rows({"1 2 3 4", "4 3 2 1", "2 1 4 3", "3 4 1 2"}));
}

TEST_CASE("field families of every supported size are pairwise orthogonal") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) {
    CAPTURE(q);
    SquareFamily fam = gf_mols(q);
    REQUIRE(fam.size() == q - 1);
    REQUIRE(fam.order() == q);
    for (int i = 0; i < fam.size(); ++i)
      for (int j = i + 1; j < fam.size(); ++j)
        REQUIRE(t_orthogonal(fam, std::vector<int>{i, j}).t_orthogonal);
  }
  REQUIRE(code_of([] { gf_mols(6); }) == ErrorCode::NotPrimePower);
  REQUIRE(code_of([] { gf_mols(10); }) == ErrorCode::NotPrimePower);
}

TEST_CASE("the order-3 field family is the additive family up to relabeling") {
  SquareFamily gf = gf_mols(3);
  SquareFamily add = additive_family(3);
  REQUIRE(relabel(gf.member(0), {1, 2, 0}) == add.member(0));
  REQUIRE(relabel(gf.member(1), {2, 1, 0}) == add.member(1));
}

TEST_CASE("cyclic development adds a constant per row") {
  REQUIRE(develop_cyclic(std::vector<int>{1, 2}).cells() == rows({"1 2", "2 1"}));

  std::vector<int> first = {1, 15, 2, 14, 3, 13, 4, 12, 5, 11, 6, 10, 7, 9, 8};
  LatinSquare dev = develop_cyclic(first);
  REQUIRE(dev.order() == 15);
  for (int j = 0; j < 15; ++j) REQUIRE(dev.at(0, j) == first[j] - 1);
  REQUIRE(dev.cells()[1] == rows({"2 1 3 15 4 14 5 13 6 12 7 11 8 10 9"})[0]);

  REQUIRE(code_of([] { develop_cyclic(std::vector<int>{1, 1}); }) == ErrorCode::NotPermutation);
  REQUIRE(code_of([] { develop_cyclic(std::vector<int>{1, 3}); }) == ErrorCode::NotPermutation);
  REQUIRE(code_of([] { develop_cyclic(std::vector<int>{}); }) == ErrorCode::NotPermutation);
  REQUIRE(code_of([] { develop_cyclic(std::vector<int>(65, 1)); }) == ErrorCode::UnsupportedOrder);
}

TEST_CASE("any first-row permutation develops into a square") {
  std::mt19937 rng(7);
  for (int n = 1; n <= 20; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> row(n);
      std::iota(row.begin(), row.end(), 1);
      std::shuffle(row.begin(), row.end(), rng);
      LatinSquare dev = develop_cyclic(row);
      REQUIRE(dev.order() == n);
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) REQUIRE(dev.at(k, j) == (row[j] - 1 + k) % n);
    }
  }
}

TEST_CASE("inflation turns cells into constant blocks") {
  LatinSquare base = develop_cyclic(std::vector<int>{1, 2});
  FrequencySquare f = inflate_frequency(base, 2);
  REQUIRE(f.side() == 4);
  REQUIRE(f.multiplicity() == 2);
  REQUIRE(f.cells() == rows({"1 1 2 2", "1 1 2 2", "2 2 1 1", "2 2 1 1"}));

  REQUIRE(inflate_frequency(base, 1).cells() == base.cells());
  REQUIRE(inflate_frequency(modular_additive(3, 1), 2).side() == 6);

  REQUIRE(code_of([&] { inflate_frequency(base, 0); }) == ErrorCode::ParamMismatch);
  REQUIRE(code_of([] { inflate_frequency(modular_additive(33, 1), 2); }) ==
          ErrorCode::OrderTooLarge);
}

TEST_CASE("collapsing symbol classes yields a frequency square") {
  LatinSquare m0 = gf_mols(4).member(0);
  FrequencySquare f = collapse_symbols(m0, std::vector<int>{0, 0, 1, 1});
  REQUIRE(f.multiplicity() == 2);
  REQUIRE(f.cells() == rows({"1 1 2 2", "1 1 2 2", "2 2 1 1", "2 2 1 1"}));

  FrequencySquare identity = collapse_symbols(m0, std::vector<int>{0, 1, 2, 3});
  REQUIRE(identity.multiplicity() == 1);
  REQUIRE(identity.cells() == m0.cells());

  REQUIRE(code_of([&] { collapse_symbols(m0, std::vector<int>{0, 0, 0, 1}); }) ==
          ErrorCode::UnevenClasses);
  REQUIRE(code_of([&] { collapse_symbols(m0, std::vector<int>{0, 0, 2, 2}); }) ==
          ErrorCode::UnevenClasses);
  REQUIRE(code_of([&] { collapse_symbols(m0, std::vector<int>{0, 0, 1}); }) ==
          ErrorCode::ParamMismatch);
  REQUIRE(code_of([&] { collapse_symbols(m0, std::vector<int>{0, 0, 1, 4}); }) ==
          ErrorCode::IndexOutOfRange);
}

TEST_CASE("construction specs rebuild the same artifacts") {
  ConstructionSpec add;
  add.method = "additive";
  add.s = 5;
  add.h = 2;
  REQUIRE(std::get<LatinSquare>(build(add)) == modular_additive(5, 2));
  REQUIRE(add.provenance().token() == "additive(s=5;h=2)");
  REQUIRE(add.cli_string() == "--additive 5 --h 2");

  ConstructionSpec fam = add;
  fam.h = 0;
  SquareFamily built = std::get<SquareFamily>(build(fam));
  REQUIRE(built.size() == 4);
  REQUIRE(built.provenance().token() == "additive(s=5;h=1,2,3,4)");
  REQUIRE(fam.provenance().token() == "additive(s=5;h=1,2,3,4)");
  REQUIRE(fam.cli_string() == "--additive 5 --all-h");

  ConstructionSpec sub = add;
  sub.method = "subtractive";
  REQUIRE(std::get<LatinSquare>(build(sub)) == modular_additive(5, 2, Sign::kMinus));
  REQUIRE(sub.cli_string() == "--additive 5 --h 2 --minus");

  ConstructionSpec mult;
  mult.method = "multiplicative";
  mult.s = 5;
  REQUIRE_FALSE(std::get<MultiplicativeGrid>(build(mult)).latin.holds);
  REQUIRE(mult.cli_string() == "--multiplicative 5");

  ConstructionSpec shift;
  shift.method = "shift-family";
  shift.s = 6;
  SquareFamily sf = std::get<SquareFamily>(build(shift));
  REQUIRE(sf.size() == 6);
  REQUIRE(sf.provenance().token() == "shift-family(s=6;base=multiplicative)");
  REQUIRE(shift.cli_string() == "--multiplicative 6 --shift");
  ConstructionSpec shift5 = shift;
  shift5.s = 5;
  REQUIRE(code_of([&] { build(shift5); }) == ErrorCode::SymbolOutOfRange);

  ConstructionSpec gf;
  gf.method = "gf-mols";
  gf.q = 4;
  REQUIRE(std::get<SquareFamily>(build(gf)).size() == 3);
  REQUIRE(gf.cli_string() == "--gf 4");

  ConstructionSpec dev;
  dev.method = "cyclic-development";
  dev.first_row = {1, 2};
  REQUIRE(std::get<LatinSquare>(build(dev)).cells() == rows({"1 2", "2 1"}));
  REQUIRE(dev.provenance().token() == "cyclic-development(n=2;row=1,2)");

  ConstructionSpec inf;
  inf.method = "inflate";
  inf.lambda = 2;
  LatinSquare base = develop_cyclic(std::vector<int>{1, 2});
  REQUIRE(std::get<FrequencySquare>(build(inf, base)).side() == 4);
  REQUIRE(inf.provenance().token() == "inflate(lambda=2;base=external)");
  REQUIRE(code_of([&] { build(inf); }) == ErrorCode::ParamMismatch);

  ConstructionSpec bogus;
  bogus.method = "mystery";
  REQUIRE(code_of([&] { build(bogus); }) == ErrorCode::ParamMismatch);

  ConstructionSpec mapped = add;
  mapped.d_i = "reverse";
  REQUIRE(code_of([&] { build(mapped); }) == ErrorCode::ParamMismatch);
}

TEST_CASE("the published order-15 squares develop from their first rows") {
  SquareFamily fam = developed_order15_family();
  REQUIRE(fam.size() == 4);
  REQUIRE(fam.order() == 15);
  REQUIRE(fam.provenance().token() == "cyclic-development(n=15;rows=4)");
  for (int i = 0; i < 4; ++i)
    for (int k = 1; k < 15; ++k)
      for (int j = 0; j < 15; ++j)
        REQUIRE(fam.member(i).at(k, j) == (fam.member(i).at(0, j) + k) % 15);
}
