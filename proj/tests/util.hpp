#pragma once

// Shared test helpers: grid literals written 1-based (as rendered) and
// error capture that surfaces the thrown code.

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "latin/core.hpp"

namespace testutil {

// Rows written with 1-based values, e.g. rows({"2 3 1", "3 1 2", "1 2 3"}).
inline latin::Grid rows(std::initializer_list<std::string> lines) {
  latin::Grid g;
  for (const auto& line : lines) {
    std::istringstream is(line);
    std::vector<int> row;
    int v;
    while (is >> v) row.push_back(v - 1);
    g.push_back(std::move(row));
  }
  return g;
}

template <typename Fn>
latin::ValidationError error_of(Fn&& fn) {
  try {
    fn();
  } catch (const latin::ValidationError& e) {
    return e;
  }
  FAIL("expected a ValidationError");
  throw std::logic_error("unreachable");
}

template <typename Fn>
latin::ErrorCode code_of(Fn&& fn) {
  return error_of(std::forward<Fn>(fn)).code();
}

inline latin::Perm random_perm(int n, std::mt19937& rng) {
  latin::Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace testutil
