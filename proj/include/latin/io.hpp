#pragma once

// File formats and structured output.
//
// Square text:   line "s <order>", then s rows of s space-separated 1-based
//                values.
// Family text:   line "family <token> order <s> count <N>", then N bare
//                grids separated by exactly one blank line.
// Structured:    JSON documents carrying order, rows (1-based), provenance;
//                verdicts and reports carry coordinates in both bases.
// Writers and readers round-trip byte-for-byte.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latin/construct.hpp"
#include "latin/core.hpp"
#include "latin/search.hpp"
#include "latin/verify.hpp"

namespace latin {

using Json = nlohmann::ordered_json;

// --- text format ---

inline std::string write_grid_rows(const Grid& g) {
  std::ostringstream os;
  for (const auto& row : g) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) os << ' ';
      os << row[c] + 1;
    }
    os << '\n';
  }
  return os.str();
}

inline std::string write_square_text(const Grid& g) {
  return "s " + std::to_string(g.size()) + "\n" + write_grid_rows(g);
}

inline std::string write_square_text(const LatinSquare& sq) { return write_square_text(sq.cells()); }

inline std::string write_family_text(const SquareFamily& fam) {
  std::ostringstream os;
  os << "family " << fam.provenance().token() << " order " << fam.order() << " count "
     << fam.size() << '\n';
  for (int i = 0; i < fam.size(); ++i) {
    if (i) os << '\n';
    os << write_grid_rows(fam.member(i).cells());
  }
  return os.str();
}

namespace detail {

inline std::vector<int> parse_int_line(const std::string& line, const char* what) {
  std::istringstream is(line);
  std::vector<int> out;
  long long v;
  while (is >> v) {
    if (v < 1 || v > kMaxOrder + 1) fail(ErrorCode::FormatError, std::string(what) + ": value out of range");
    out.push_back(static_cast<int>(v - 1));
  }
  std::string rest;
  if (is.bad() || (is.fail() && !is.eof())) fail(ErrorCode::FormatError, std::string(what) + ": not an integer row");
  return out;
}

}  // namespace detail

// Raw grid (internal 0-based values), no Latin validation: checking is the
// caller's job.
inline Grid read_square_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail(ErrorCode::FormatError, "empty input");
  std::istringstream hs(header);
  std::string tag;
  int order = 0;
  if (!(hs >> tag >> order) || tag != "s" || order < 1)
    fail(ErrorCode::FormatError, "expected header \"s <order>\"");
  Grid g;
  std::string line;
  for (int r = 0; r < order; ++r) {
    if (!std::getline(in, line)) fail(ErrorCode::FormatError, "missing row " + std::to_string(r + 1));
    g.push_back(detail::parse_int_line(line, "square row"));
    if (static_cast<int>(g.back().size()) != order)
      fail(ErrorCode::FormatError, "row " + std::to_string(r + 1) + " has wrong length");
  }
  return g;
}

struct FamilyText {
  Provenance provenance;
  int order = 0;
  std::vector<Grid> grids;

  SquareFamily to_family() const {
    std::vector<LatinSquare> members;
    members.reserve(grids.size());
    for (const auto& g : grids) members.push_back(LatinSquare::from_grid(g));
    return SquareFamily(std::move(members), provenance);
  }
};

inline FamilyText read_family_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) fail(ErrorCode::FormatError, "empty input");
  std::istringstream hs(header);
  std::string tag, token, order_kw, count_kw;
  int order = 0, count = 0;
  if (!(hs >> tag >> token >> order_kw >> order >> count_kw >> count) || tag != "family" ||
      order_kw != "order" || count_kw != "count" || order < 1 || count < 1)
    fail(ErrorCode::FormatError, "expected header \"family <token> order <s> count <N>\"");
  FamilyText out;
  out.provenance = Provenance::parse(token);
  out.order = order;
  std::string line;
  for (int k = 0; k < count; ++k) {
    if (k) {
      if (!std::getline(in, line) || !line.empty())
        fail(ErrorCode::FormatError, "expected one blank line between squares");
    }
    Grid g;
    for (int r = 0; r < order; ++r) {
      if (!std::getline(in, line)) fail(ErrorCode::FormatError, "missing rows in member " + std::to_string(k + 1));
      g.push_back(detail::parse_int_line(line, "family row"));
      if (static_cast<int>(g.back().size()) != order)
        fail(ErrorCode::FormatError, "member " + std::to_string(k + 1) + " has a wrong-length row");
    }
    out.grids.push_back(std::move(g));
  }
  return out;
}

// One-line list of 1-based values (for cyclic development).
inline std::vector<int> read_row_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::FormatError, "empty row file");
  std::vector<int> zero_based = detail::parse_int_line(line, "first row");
  for (int& v : zero_based) ++v;
  return zero_based;
}

// --- structured (JSON) format ---

inline Json rows_to_json(const Grid& g) {
  Json rows = Json::array();
  for (const auto& row : g) {
    Json r = Json::array();
    for (int v : row) r.push_back(v + 1);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Grid rows_from_json(const Json& rows) {
  Grid g;
  for (const auto& row : rows) {
    std::vector<int> r;
    for (const auto& v : row) r.push_back(v.get<int>() - 1);
    g.push_back(std::move(r));
  }
  return g;
}

inline Json square_to_json(const Grid& g, const Provenance& prov = Provenance::external()) {
  Json doc;
  doc["order"] = g.size();
  doc["rows"] = rows_to_json(g);
  doc["provenance"] = prov.token();
  return doc;
}

inline Json family_to_json(const SquareFamily& fam) {
  Json doc;
  doc["order"] = fam.order();
  doc["count"] = fam.size();
  doc["provenance"] = fam.provenance().token();
  Json members = Json::array();
  for (int i = 0; i < fam.size(); ++i) members.push_back(rows_to_json(fam.member(i).cells()));
  doc["members"] = std::move(members);
  return doc;
}

inline SquareFamily family_from_json(const Json& doc) {
  std::vector<LatinSquare> members;
  for (const auto& rows : doc.at("members")) members.push_back(LatinSquare::from_grid(rows_from_json(rows)));
  return SquareFamily(std::move(members), Provenance::parse(doc.at("provenance").get<std::string>()));
}

inline Json cell_to_json(const CellRef& c) {
  Json j;
  j["row"] = c.row + 1;
  j["col"] = c.col + 1;
  j["row0"] = c.row;
  j["col0"] = c.col;
  return j;
}

inline Json witness_to_json(const Witness& w) {
  Json j;
  j["code"] = error_code_name(w.code);
  if (w.a.row >= 0 || w.a.col >= 0) j["a"] = cell_to_json(w.a);
  if (w.b.row >= 0 || w.b.col >= 0) j["b"] = cell_to_json(w.b);
  if (w.symbol >= 0) {
    j["symbol"] = w.symbol + 1;
    j["symbol0"] = w.symbol;
  }
  if (w.symbol_b >= 0) {
    j["symbol_b"] = w.symbol_b + 1;
    j["symbol_b0"] = w.symbol_b;
  }
  if (w.count >= 0) j["count"] = w.count;
  if (w.expected >= 0) j["expected"] = w.expected;
  if (!w.tuple.empty()) {
    Json t = Json::array(), t0 = Json::array();
    for (int v : w.tuple) {
      t.push_back(v + 1);
      t0.push_back(v);
    }
    j["tuple"] = std::move(t);
    j["tuple0"] = std::move(t0);
  }
  if (!w.indices.empty()) {
    Json t = Json::array(), t0 = Json::array();
    for (int v : w.indices) {
      t.push_back(v + 1);
      t0.push_back(v);
    }
    j["indices"] = std::move(t);
    j["indices0"] = std::move(t0);
  }
  return j;
}

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  j["holds"] = v.holds;
  j["witness"] = v.witness ? witness_to_json(*v.witness) : Json(nullptr);
  return j;
}

inline Json report_to_json(const OrthoReport& r) {
  Json j;
  j["order"] = r.order;
  j["arity"] = r.arity;
  j["distinct"] = r.distinct;
  j["defect"] = r.defect;
  j["t_orthogonal"] = r.t_orthogonal;
  j["all_same_or_distinct"] = r.all_same_or_distinct;
  j["witness"] = r.witness ? witness_to_json(*r.witness) : Json(nullptr);
  return j;
}

inline Json indices_to_json(const std::vector<int>& idx) {
  Json a = Json::array();
  for (int i : idx) a.push_back(i + 1);
  return a;
}

inline Json staircase_to_json(const StaircaseReport& rep) {
  Json j;
  j["family_size"] = rep.family_size;
  Json levels = Json::array();
  for (auto [t, holds] : rep.levels) {
    Json l;
    l["t"] = t;
    l["holds"] = holds;
    levels.push_back(std::move(l));
  }
  j["levels"] = std::move(levels);
  j["threshold"] = rep.threshold ? Json(*rep.threshold) : Json(nullptr);
  if (rep.converse) {
    Json c;
    c["subset"] = indices_to_json(rep.converse->subset);
    c["failing_subsubset"] = indices_to_json(rep.converse->failing_subsubset);
    j["converse"] = std::move(c);
  } else {
    j["converse"] = nullptr;
  }
  return j;
}

inline Json outcome_to_json(const CountOutcome& o, const std::string& replay) {
  Json j;
  j["status"] = search_status_name(o.status);
  j["count"] = o.count;
  j["nodes"] = o.nodes;
  j["replay"] = replay;
  return j;
}

inline Json outcome_to_json(const MateOutcome& o, const std::string& replay) {
  Json j;
  j["status"] = search_status_name(o.status);
  j["mate"] = o.mate ? rows_to_json(o.mate->cells()) : Json(nullptr);
  j["nodes"] = o.nodes;
  j["replay"] = replay;
  return j;
}

inline Json outcome_to_json(const SubsetOutcome& o, const std::string& replay) {
  Json j;
  j["status"] = search_status_name(o.status);
  j["size"] = o.indices.size();
  j["indices"] = indices_to_json(o.indices);
  j["nodes"] = o.nodes;
  j["replay"] = replay;
  return j;
}

inline Json outcome_to_json(const TMaxOutcome& o, const std::string& replay) {
  Json j;
  j["status"] = search_status_name(o.status);
  j["value"] = o.value;
  j["indices"] = indices_to_json(o.indices);
  j["nodes"] = o.nodes;
  j["replay"] = replay;
  return j;
}

// --- whole-file helpers ---

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FormatError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::FormatError, "cannot write " + path);
  out << content;
}

struct LoadedSquare {
  Grid grid;
  Provenance provenance;
};

namespace detail {

inline Json parse_json(const std::string& content) {
  try {
    return Json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::FormatError, std::string("bad structured input: ") + e.what());
  }
}

}  // namespace detail

// Reads a single square from text or structured content (raw, unvalidated).
inline LoadedSquare parse_square(const std::string& content) {
  LoadedSquare out;
  if (!content.empty() && content[0] == '{') {
    Json doc = detail::parse_json(content);
    try {
      if (doc.contains("members")) fail(ErrorCode::FormatError, "expected a square, found a family");
      out.grid = rows_from_json(doc.at("rows"));
      out.provenance = Provenance::parse(doc.value("provenance", "external"));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::FormatError, std::string("bad structured square: ") + e.what());
    }
    return out;
  }
  std::istringstream is(content);
  out.grid = read_square_text(is);
  return out;
}

inline SquareFamily parse_family(const std::string& content) {
  if (!content.empty() && content[0] == '{') {
    Json doc = detail::parse_json(content);
    try {
      if (!doc.contains("members")) fail(ErrorCode::FormatError, "expected a family, found a square");
      return family_from_json(doc);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::FormatError, std::string("bad structured family: ") + e.what());
    }
  }
  std::istringstream is(content);
  return read_family_text(is).to_family();
}

}  // namespace latin
