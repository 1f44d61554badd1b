#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "latin/core.hpp"
#include "util.hpp"

using namespace latin;
using testutil::code_of;
using testutil::error_of;
using testutil::rows;

namespace {

const Grid kOrder3A = rows({"2 3 1", "3 1 2", "1 2 3"});
const Grid kOrder3B = rows({"3 2 1", "1 3 2", "2 1 3"});
const Grid kOrder5 = rows({"1 2 3 4 5", "2 3 4 5 1", "3 4 5 1 2", "4 5 1 2 3", "5 1 2 3 4"});

}  // namespace

TEST_CASE("valid grids become squares") {
  LatinSquare a = LatinSquare::from_grid(kOrder3A);
  REQUIRE(a.order() == 3);
  REQUIRE(a.at(0, 0) == 1);  // rendered 2
  REQUIRE(a.at(2, 2) == 2);
  REQUIRE(a.cells() == kOrder3A);
  REQUIRE(LatinSquare::from_grid(kOrder3B).order() == 3);
  REQUIRE(LatinSquare::from_grid({{0}}).order() == 1);
  REQUIRE(LatinSquare::from_grid(kOrder3A) == a);
  REQUIRE(!(LatinSquare::from_grid(kOrder3B) == a));
}

TEST_CASE("the first violation in row-major scan order is reported") {
  SECTION("row duplicate") {
    auto e = error_of([] { LatinSquare::from_grid(rows({"1 1", "2 2"})); });
    REQUIRE(e.code() == ErrorCode::RowDuplicate);
    REQUIRE(e.witness());
    const Witness& w = *e.witness();
    REQUIRE(w.a == CellRef{0, 0});
    REQUIRE(w.b == CellRef{0, 1});
    REQUIRE(w.symbol == 0);
    REQUIRE(w.describe() == "RowDuplicate: symbol 1 repeats in row 1 at columns 1 and 2");
  }
  SECTION("column duplicate") {
    auto e = error_of([] { LatinSquare::from_grid(rows({"1 2", "1 2"})); });
    REQUIRE(e.code() == ErrorCode::ColDuplicate);
    const Witness& w = *e.witness();
    REQUIRE(w.a == CellRef{0, 0});
    REQUIRE(w.b == CellRef{1, 0});
    REQUIRE(w.symbol == 0);
    REQUIRE(w.describe() == "ColDuplicate: symbol 1 repeats in column 1 at rows 1 and 2");
  }
  SECTION("value outside 1..order") {
    auto e = error_of([] { LatinSquare::from_grid(rows({"1 3", "2 1"})); });
    REQUIRE(e.code() == ErrorCode::SymbolOutOfRange);
    const Witness& w = *e.witness();
    REQUIRE(w.b == CellRef{0, 1});
    REQUIRE(w.symbol == 2);
    REQUIRE(w.describe() == "SymbolOutOfRange: value 3 at (1,2)");
    REQUIRE(code_of([] { LatinSquare::from_grid({{0, -1}, {-1, 0}}); }) ==
            ErrorCode::SymbolOutOfRange);
  }
  SECTION("shape problems") {
    REQUIRE(code_of([] { LatinSquare::from_grid({{0, 1}, {1}}); }) == ErrorCode::NotSquare);
    REQUIRE(code_of([] { LatinSquare::from_grid({}); }) == ErrorCode::NotSquare);
    REQUIRE(code_of([] { LatinSquare::from_grid(rows({"1 2 3", "2 3 1"})); }) ==
            ErrorCode::NotSquare);
    REQUIRE(code_of([] { LatinSquare::from_grid(Grid(65, std::vector<int>(65, 0))); }) ==
            ErrorCode::UnsupportedOrder);
  }
  SECTION("scan order decides which violation wins") {
    // duplicate at (1,2) in row-major order comes before the bad value at (2,2)
    REQUIRE(code_of([] { LatinSquare::from_grid(rows({"1 1", "2 9"})); }) ==
            ErrorCode::RowDuplicate);
    // within one cell the range check runs first
    REQUIRE(code_of([] { LatinSquare::from_grid(rows({"3 1", "1 1"})); }) ==
            ErrorCode::SymbolOutOfRange);
  }
}

TEST_CASE("rectangles keep rows duplicate-free and columns injective") {
  LatinRectangle r = LatinRectangle::from_grid(rows({"1 2 3 4", "2 3 4 1"}), 4);
  REQUIRE(r.rows() == 2);
  REQUIRE(r.cols() == 4);
  REQUIRE(r.symbols() == 4);
  REQUIRE(r.at(1, 3) == 0);
  REQUIRE(LatinRectangle::from_grid(rows({"1 2", "2 3"}), 4).symbols() == 4);

  REQUIRE(code_of([] { LatinRectangle::from_grid(rows({"1 2", "2 1", "1 2"}), 2); }) ==
          ErrorCode::BadShape);  // more rows than symbols
  REQUIRE(code_of([] { LatinRectangle::from_grid(rows({"1 2 1"}), 2); }) == ErrorCode::BadShape);
  REQUIRE(code_of([] { LatinRectangle::from_grid({{0, 1}, {1}}, 3); }) == ErrorCode::BadShape);
  REQUIRE(code_of([] { LatinRectangle::from_grid(rows({"1 2"}), 0); }) == ErrorCode::BadShape);
  REQUIRE(code_of([] { LatinRectangle::from_grid(rows({"1 1 2"}), 3); }) ==
          ErrorCode::RowDuplicate);
  REQUIRE(code_of([] { LatinRectangle::from_grid(rows({"1 2", "1 3"}), 3); }) ==
          ErrorCode::ColDuplicate);
  REQUIRE(code_of([] { LatinRectangle::from_grid(rows({"1 5"}), 4); }) ==
          ErrorCode::SymbolOutOfRange);
}

TEST_CASE("rectangle slices of a square stay valid") {
  LatinSquare sq = LatinSquare::from_grid(kOrder3A);
  LatinRectangle r = slice_rectangle(sq, 2, 3);
  REQUIRE(r.rows() == 2);
  REQUIRE(r.cols() == 3);
  REQUIRE(r.symbols() == 3);
  REQUIRE(r.cells() == Grid{kOrder3A[0], kOrder3A[1]});

  REQUIRE(slice_rectangle(sq, 3, 3).cells() == sq.cells());
  REQUIRE(slice_rectangle(sq, 1, 1).at(0, 0) == sq.at(0, 0));
  REQUIRE(code_of([&] { slice_rectangle(sq, 0, 2); }) == ErrorCode::BadShape);
  REQUIRE(code_of([&] { slice_rectangle(sq, 2, 4); }) == ErrorCode::BadShape);
}

TEST_CASE("frequency squares need each symbol lambda times per line") {
  FrequencySquare f =
      FrequencySquare::from_grid(rows({"1 1 2 2", "1 1 2 2", "2 2 1 1", "2 2 1 1"}), 2);
  REQUIRE(f.side() == 4);
  REQUIRE(f.multiplicity() == 2);
  REQUIRE(f.symbols() == 2);
  REQUIRE(f.at(0, 2) == 1);
  REQUIRE(FrequencySquare::from_grid({{0}}, 1).symbols() == 1);
  REQUIRE(FrequencySquare::from_grid(Grid(4, std::vector<int>(4, 0)), 4).symbols() == 1);
  // multiplicity 1 degenerates to the Latin property
  REQUIRE(FrequencySquare::from_grid(kOrder3A, 1).symbols() == 3);

  SECTION("row count witness") {
    auto e = error_of([] {
      FrequencySquare::from_grid(rows({"1 1 1 2", "2 2 2 1", "1 1 1 2", "2 2 2 1"}), 2);
    });
    REQUIRE(e.code() == ErrorCode::RowCount);
    const Witness& w = *e.witness();
    REQUIRE(w.b.row == 0);
    REQUIRE(w.symbol == 0);
    REQUIRE(w.count == 3);
    REQUIRE(w.expected == 2);
    REQUIRE(w.describe() == "RowCount: symbol 1 occurs 3x in row 1, expected 2");
  }
  SECTION("column count witness") {
    auto e = error_of([] {
      FrequencySquare::from_grid(rows({"1 1 2 2", "1 1 2 2", "2 2 1 1", "1 1 2 2"}), 2);
    });
    REQUIRE(e.code() == ErrorCode::ColCount);
    const Witness& w = *e.witness();
    REQUIRE(w.b.col == 0);
    REQUIRE(w.count == 3);
    REQUIRE(w.describe() == "ColCount: symbol 1 occurs 3x in column 1, expected 2");
  }
  SECTION("parameter and range failures") {
    Grid g = rows({"1 1 2 2", "1 1 2 2", "2 2 1 1", "2 2 1 1"});
    REQUIRE(code_of([&] { FrequencySquare::from_grid(g, 3); }) == ErrorCode::ParamMismatch);
    REQUIRE(code_of([&] { FrequencySquare::from_grid(g, 0); }) == ErrorCode::ParamMismatch);
    REQUIRE(code_of([] {
              FrequencySquare::from_grid(rows({"1 2 2 1", "2 1 1 2", "1 2 2 1", "2 1 1 3"}), 2);
            }) == ErrorCode::SymbolOutOfRange);
    REQUIRE(code_of([] { FrequencySquare::from_grid({}, 1); }) == ErrorCode::NotSquare);
    REQUIRE(code_of([] { FrequencySquare::from_grid({{0, 0}, {0}}, 1); }) == ErrorCode::NotSquare);
    REQUIRE(code_of([] { FrequencySquare::from_grid(Grid(65, std::vector<int>(65, 0)), 1); }) ==
            ErrorCode::UnsupportedOrder);
  }
}

TEST_CASE("families keep one order and bounds-check member access") {
  SquareFamily fam({LatinSquare::from_grid(kOrder3A), LatinSquare::from_grid(kOrder3B)});
  REQUIRE(fam.order() == 3);
  REQUIRE(fam.size() == 2);
  REQUIRE(fam.member(1).cells() == kOrder3B);
  REQUIRE(fam.provenance().token() == "external");

  REQUIRE(code_of([&] { fam.member(2); }) == ErrorCode::IndexOutOfRange);
  REQUIRE(code_of([&] { fam.member(-1); }) == ErrorCode::IndexOutOfRange);
  REQUIRE(code_of([] { SquareFamily({}); }) == ErrorCode::EmptyFamily);
  REQUIRE(code_of([] {
            SquareFamily({LatinSquare::from_grid(kOrder3A), LatinSquare::from_grid({{0}})});
          }) == ErrorCode::OrderMismatch);
}

TEST_CASE("superposition carries member values in ascending selection order") {
  SquareFamily fam({LatinSquare::from_grid(kOrder3A), LatinSquare::from_grid(kOrder3B)});
  TupleArray arr = superpose(fam, std::vector<int>{0, 1});
  REQUIRE(arr.order() == 3);
  REQUIRE(arr.arity() == 2);
  // top row renders as (2,3), (3,2), (1,1)
  REQUIRE(arr.tuple(0, 0)[0] == 1);
  REQUIRE(arr.tuple(0, 0)[1] == 2);
  REQUIRE(arr.tuple(0, 1)[0] == 2);
  REQUIRE(arr.tuple(0, 1)[1] == 1);
  REQUIRE(arr.tuple(0, 2)[0] == 0);
  REQUIRE(arr.tuple(0, 2)[1] == 0);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      REQUIRE(arr.data()[(static_cast<size_t>(r) * 3 + c) * 2] == fam.member(0).at(r, c));
      REQUIRE(arr.data()[(static_cast<size_t>(r) * 3 + c) * 2 + 1] == fam.member(1).at(r, c));
    }

  // selections normalize to ascending order, so {1,0} equals {0,1}
  REQUIRE(superpose(fam, std::vector<int>{1, 0}).data() == arr.data());
  REQUIRE(superpose_all(fam).data() == arr.data());

  TupleArray one = superpose(fam, std::vector<int>{1});
  REQUIRE(one.arity() == 1);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) REQUIRE(one.tuple(r, c)[0] == fam.member(1).at(r, c));
}

TEST_CASE("member selections are validated") {
  SquareFamily fam({LatinSquare::from_grid(kOrder3A), LatinSquare::from_grid(kOrder3B)});
  REQUIRE(code_of([&] { superpose(fam, std::vector<int>{}); }) == ErrorCode::EmptySelection);
  REQUIRE(code_of([&] { superpose(fam, std::vector<int>{0, 2}); }) == ErrorCode::IndexOutOfRange);
  REQUIRE(code_of([&] { superpose(fam, std::vector<int>{-1}); }) == ErrorCode::IndexOutOfRange);
  REQUIRE(code_of([&] { superpose(fam, std::vector<int>{1, 1}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("transforms preserve the property and compose predictably") {
  LatinSquare L = LatinSquare::from_grid(kOrder5);
  const int s = L.order();
  std::mt19937 rng(123);

  Perm id(s);
  std::iota(id.begin(), id.end(), 0);
  REQUIRE(relabel(L, id) == L);
  REQUIRE(transpose(transpose(L)) == L);

  for (int round = 0; round < 10; ++round) {
    Perm p = testutil::random_perm(s, rng);
    Perm q = testutil::random_perm(s, rng);

    Perm qp(s);
    for (int v = 0; v < s; ++v) qp[v] = q[p[v]];
    REQUIRE(relabel(relabel(L, p), q) == relabel(L, qp));

    LatinSquare rp = permute_rows(L, p);
    LatinSquare cp = permute_cols(L, p);
    for (int r = 0; r < s; ++r)
      for (int c = 0; c < s; ++c) {
        REQUIRE(rp.at(r, c) == L.at(p[r], c));
        REQUIRE(cp.at(r, c) == L.at(r, p[c]));
      }
    REQUIRE(transpose(permute_rows(L, p)) == permute_cols(transpose(L), p));
  }

  REQUIRE(code_of([&] { relabel(L, {0, 1}); }) == ErrorCode::BadPermutation);
  REQUIRE(code_of([&] { permute_rows(L, {0, 0, 2, 3, 4}); }) == ErrorCode::BadPermutation);
  REQUIRE(code_of([&] { permute_cols(L, {0, 1, 2, 3, 9}); }) == ErrorCode::BadPermutation);
}

TEST_CASE("provenance tokens round-trip through parse") {
  Provenance p;
  p.method = "additive";
  p.params = {{"s", "5"}, {"h", "1,2,3,4"}};
  REQUIRE(p.token() == "additive(s=5;h=1,2,3,4)");
  Provenance back = Provenance::parse(p.token());
  REQUIRE(back.method == "additive");
  REQUIRE(back.params == p.params);
  REQUIRE(back.token() == p.token());

  REQUIRE(Provenance::parse("external").token() == "external");
  REQUIRE(Provenance::external().token() == "external");

  // parameter order is part of the token
  Provenance swapped;
  swapped.method = "m";
  swapped.params = {{"b", "2"}, {"a", "1"}};
  REQUIRE(Provenance::parse("m(b=2;a=1)").token() == swapped.token());

  REQUIRE(code_of([] { Provenance::parse("m(a=1"); }) == ErrorCode::FormatError);
  REQUIRE(code_of([] { Provenance::parse("m(a)"); }) == ErrorCode::FormatError);
  REQUIRE(code_of([] { Provenance::parse("m(a=1;b)"); }) == ErrorCode::FormatError);
}

TEST_CASE("witness messages name the offense") {
  Witness tc;
  tc.code = ErrorCode::TupleCollision;
  tc.a = {0, 0};
  tc.b = {1, 2};
  tc.tuple = {1, 2};
  REQUIRE(tc.describe() == "TupleCollision: cells (1,1) and (2,3) share tuple (2,3)");

  Witness sub = tc;
  sub.code = ErrorCode::SubsetNotOrthogonal;
  sub.indices = {0, 1};
  REQUIRE(sub.describe() ==
          "SubsetNotOrthogonal: cells (1,1) and (2,3) share tuple (2,3): member subset {1,2} fails");

  Witness pc;
  pc.code = ErrorCode::PairCount;
  pc.symbol = 0;
  pc.symbol_b = 1;
  pc.count = 0;
  pc.expected = 4;
  REQUIRE(pc.describe() == "PairCount: count 0, expected 4");
}
