// latinsq: generate, check, and search Latin squares and their families.
//
// Exit codes: 0 success / verdict true, 1 verdict false or proven absent,
// 2 usage or validation error (diagnostics on stderr), 3 search budget
// exhausted.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latin/latin.hpp"

namespace {

using namespace latin;

struct Output {
  std::string path;  // empty = stdout
  void emit(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
      return;
    }
    spit(path, content);
  }
};

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::vector<int> parse_indices(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t pos = 0;
      int v = std::stoi(part, &pos);
      if (pos != part.size() || v < 1) throw std::invalid_argument(part);
      out.push_back(v - 1);
    } catch (const std::exception&) {
      fail(ErrorCode::FormatError, "bad index list: " + csv);
    }
  }
  if (out.empty()) fail(ErrorCode::FormatError, "empty index list");
  return out;
}

std::string frequency_text(const FrequencySquare& f) {
  return "s " + std::to_string(f.side()) + "\n" + write_grid_rows(f.cells());
}

Json frequency_json(const FrequencySquare& f, const Provenance& prov) {
  Json doc;
  doc["side"] = f.side();
  doc["multiplicity"] = f.multiplicity();
  doc["rows"] = rows_to_json(f.cells());
  doc["provenance"] = prov.token();
  return doc;
}

struct GenArgs {
  int additive = 0;
  int h = 0;
  bool all_h = false;
  bool minus = false;
  int multiplicative = 0;
  int gf = 0;
  std::string develop;
  bool shift = false;
  int inflate = 0;
  std::string format = "text";
  Output out;
};

int run_gen(const GenArgs& a) {
  const bool structured = a.format == "structured";
  int sources = (a.additive > 0) + (a.multiplicative > 0) + (a.gf > 0) + !a.develop.empty();
  if (sources != 1)
    fail(ErrorCode::ParamMismatch,
         "need exactly one of --additive, --multiplicative, --gf, --develop");

  std::optional<LatinSquare> single;
  std::optional<SquareFamily> family;
  std::optional<MultiplicativeGrid> mult;
  Provenance prov;

  if (a.additive > 0) {
    if (a.all_h && a.h > 0) fail(ErrorCode::ParamMismatch, "--h and --all-h conflict");
    ConstructionSpec spec;
    spec.method = a.minus ? "subtractive" : "additive";
    spec.s = a.additive;
    spec.h = a.h;  // 0 (bare --additive or --all-h) means every coprime h
    Constructed built = build(spec);
    if (std::holds_alternative<LatinSquare>(built)) {
      single = std::get<LatinSquare>(built);
      prov = spec.provenance();
    } else {
      family = std::get<SquareFamily>(built);
    }
  } else if (a.multiplicative > 0) {
    mult = modular_multiplicative(a.multiplicative);
    Provenance p;
    p.method = "multiplicative";
    p.params = {{"s", std::to_string(a.multiplicative)}};
    prov = p;
  } else if (a.gf > 0) {
    family = gf_mols(a.gf);
  } else {
    std::istringstream row(slurp(a.develop));
    std::vector<int> first = read_row_text(row);
    single = develop_cyclic(first);
    ConstructionSpec spec;
    spec.method = "cyclic-development";
    spec.first_row = first;
    prov = spec.provenance();
  }

  if (a.shift) {
    if (!single && !mult) fail(ErrorCode::ParamMismatch, "--shift needs a single-square source");
    LatinSquare base = single ? *single : mult->square();
    std::string tag = a.multiplicative > 0 ? "multiplicative" : prov.token();
    family = shift_family(base, base.order(), tag);
    single.reset();
    mult.reset();
  }

  if (a.inflate > 0) {
    if (mult) {
      single = mult->square();
      mult.reset();
    }
    if (!single) fail(ErrorCode::ParamMismatch, "--inflate needs a single-square source");
    FrequencySquare f = inflate_frequency(*single, a.inflate);
    Provenance p;
    p.method = "inflate";
    p.params = {{"lambda", std::to_string(a.inflate)}, {"base", prov.token()}};
    a.out.emit(structured ? dump(frequency_json(f, p)) : frequency_text(f));
    return 0;
  }

  if (family) {
    a.out.emit(structured ? dump(family_to_json(*family)) : write_family_text(*family));
    return 0;
  }
  if (single) {
    a.out.emit(structured ? dump(square_to_json(single->cells(), prov)) : write_square_text(*single));
    return 0;
  }
  // multiplicative grid: emitted verbatim even when not Latin, with the
  // verdict carried in the exit code (and in structured output).
  if (structured) {
    Json doc = square_to_json(mult->cells, prov);
    doc["latin"] = verdict_to_json(mult->latin);
    a.out.emit(dump(doc));
  } else {
    a.out.emit(write_square_text(mult->cells));
  }
  return mult->latin.holds ? 0 : 1;
}

struct CheckArgs {
  std::string file;
  int lambda = 0;
  std::string format = "text";
};

int run_check(const CheckArgs& a) {
  const bool structured = a.format == "structured";
  std::string content = slurp(a.file);
  const char* kind = a.lambda > 0 ? "frequency" : "latin";

  std::vector<Grid> grids;
  bool family_input = false;
  if (!content.empty() && content.rfind("family", 0) == 0) {
    std::istringstream is(content);
    for (auto& g : read_family_text(is).grids) grids.push_back(std::move(g));
    family_input = true;
  } else if (!content.empty() && content[0] == '{') {
    Json doc = detail::parse_json(content);
    if (doc.contains("members")) {
      for (const auto& rows : doc.at("members")) grids.push_back(rows_from_json(rows));
      family_input = true;
    } else {
      grids.push_back(rows_from_json(doc.at("rows")));
    }
  } else {
    grids.push_back(parse_square(content).grid);
  }

  Verdict verdict;
  int failed_member = -1;
  for (size_t k = 0; k < grids.size(); ++k) {
    verdict = a.lambda > 0 ? is_frequency(grids[k], a.lambda) : is_latin(grids[k]);
    if (!verdict.holds) {
      failed_member = static_cast<int>(k);
      break;
    }
  }

  if (structured) {
    Json doc;
    doc["kind"] = kind;
    if (family_input) doc["members"] = grids.size();
    if (family_input && failed_member >= 0) doc["member"] = failed_member + 1;
    doc["verdict"] = verdict_to_json(verdict);
    std::cout << dump(doc);
  } else {
    std::string line = std::string(kind) + (verdict.holds ? " true" : " false");
    if (family_input) line += " members=" + std::to_string(grids.size());
    if (family_input && failed_member >= 0) line += " member=" + std::to_string(failed_member + 1);
    std::cout << line << "\n";
    if (verdict.witness) std::cout << verdict.witness->describe() << "\n";
  }
  return verdict.holds ? 0 : 1;
}

struct OrthoArgs {
  std::string file;
  int t = 0;
  std::string indices;
  bool min_degree = false;
  bool defect_only = false;
  std::string format = "text";
};

int run_ortho(const OrthoArgs& a) {
  const bool structured = a.format == "structured";
  SquareFamily fam = parse_family(slurp(a.file));

  if (a.min_degree) {
    auto d = min_orthogonality_degree(fam);
    if (structured) {
      Json doc;
      doc["min_degree"] = d ? Json(*d) : Json(nullptr);
      std::cout << dump(doc);
    } else {
      std::cout << (d ? std::to_string(*d) : std::string("none")) << "\n";
    }
    return d ? 0 : 1;
  }

  if (!a.indices.empty()) {
    std::vector<int> idx = parse_indices(a.indices);
    if (a.t > 0 && a.t != static_cast<int>(idx.size()))
      fail(ErrorCode::BadArity, "--t disagrees with the number of --indices");
    OrthoReport rep = t_orthogonal(fam, idx);
    if (a.defect_only) {
      if (structured) {
        Json doc;
        doc["defect"] = rep.defect;
        std::cout << dump(doc);
      } else {
        std::cout << rep.defect << "\n";
      }
      return 0;
    }
    if (structured) {
      std::cout << dump(report_to_json(rep));
    } else {
      std::cout << "t-orthogonal " << (rep.t_orthogonal ? "true" : "false") << "\n"
                << "order=" << rep.order << " arity=" << rep.arity << " distinct=" << rep.distinct
                << " defect=" << rep.defect << "\n";
      if (rep.witness) std::cout << rep.witness->describe() << "\n";
    }
    return rep.t_orthogonal ? 0 : 1;
  }

  if (a.t > 0) {
    Verdict v = mutually_t_orthogonal(fam, a.t);
    if (structured) {
      Json doc;
      doc["t"] = a.t;
      doc["verdict"] = verdict_to_json(v);
      std::cout << dump(doc);
    } else {
      std::cout << "mutually " << a.t << "-orthogonal " << (v.holds ? "true" : "false") << "\n";
      if (v.witness) std::cout << v.witness->describe() << "\n";
    }
    return v.holds ? 0 : 1;
  }

  fail(ErrorCode::ParamMismatch, "need one of --min-degree, --indices, or --t");
}

struct SearchArgs {
  int count = 0;
  bool reduced = false;
  int stream = 0;
  std::string mate;
  std::string max_subset;
  int exhaustive_tmax = 0;
  int t = 2;
  int threads = 1;
  std::uint64_t budget_nodes = SearchBudget{}.max_nodes;
  double budget_secs = SearchBudget{}.max_seconds;
  std::string format = "text";
};

int status_code(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return 0;
    case SearchStatus::kProvenAbsent: return 1;
    case SearchStatus::kBudgetExhausted: return 3;
  }
  return 2;
}

int run_search(const SearchArgs& a) {
  const bool structured = a.format == "structured";
  SearchBudget budget;
  budget.max_nodes = a.budget_nodes;
  budget.max_seconds = a.budget_secs;
  budget.threads = a.threads;

  auto replay_tail = [&](std::string head) {
    std::ostringstream os;
    os << head << " --threads " << a.threads << " --budget-nodes " << a.budget_nodes
       << " --budget-secs " << a.budget_secs;
    return os.str();
  };

  int modes = (a.count > 0) + (a.stream > 0) + !a.mate.empty() + !a.max_subset.empty() +
              (a.exhaustive_tmax > 0);
  if (modes != 1)
    fail(ErrorCode::ParamMismatch,
         "need exactly one of --count, --stream, --mate, --max-subset, --exhaustive-tmax");

  if (a.count > 0) {
    CountOutcome out = enumerate_latin(
        a.count, a.reduced ? EnumerateMode::kCountReduced : EnumerateMode::kCountAll, budget);
    std::string replay =
        replay_tail("search --count " + std::to_string(a.count) + (a.reduced ? " --reduced" : ""));
    if (structured) {
      std::cout << dump(outcome_to_json(out, replay));
    } else if (out.status == SearchStatus::kFound) {
      std::cout << out.count << "\n";
    } else {
      std::cout << search_status_name(out.status) << "\n";
    }
    return status_code(out.status);
  }

  if (a.stream > 0) {
    if (structured) fail(ErrorCode::ParamMismatch, "--stream emits text only");
    bool first = true;
    std::function<bool(const LatinSquare&)> sink = [&](const LatinSquare& sq) {
      if (!first) std::cout << "\n";
      first = false;
      std::cout << write_square_text(sq);
      return true;
    };
    CountOutcome out = enumerate_latin(a.stream, EnumerateMode::kStream, budget, &sink);
    return out.status == SearchStatus::kFound ? 0 : status_code(out.status);
  }

  if (!a.mate.empty()) {
    LatinSquare L = LatinSquare::from_grid(parse_square(slurp(a.mate)).grid);
    MateOutcome out = orthogonal_mate_search(L, budget);
    std::string replay = replay_tail("search --mate " + a.mate);
    if (structured) {
      std::cout << dump(outcome_to_json(out, replay));
    } else {
      std::cout << search_status_name(out.status) << "\n";
      if (out.mate) std::cout << write_square_text(*out.mate);
    }
    return status_code(out.status);
  }

  if (!a.max_subset.empty()) {
    SquareFamily fam = parse_family(slurp(a.max_subset));
    SubsetOutcome out = max_mutual_subset(fam, a.t, budget);
    std::string replay =
        replay_tail("search --max-subset " + a.max_subset + " --t " + std::to_string(a.t));
    if (structured) {
      std::cout << dump(outcome_to_json(out, replay));
    } else {
      std::cout << search_status_name(out.status) << "\n";
      std::string idx;
      for (int i : out.indices) idx += (idx.empty() ? "" : ",") + std::to_string(i + 1);
      std::cout << "size=" << out.indices.size() << " indices=" << idx << "\n";
    }
    return status_code(out.status);
  }

  TMaxOutcome out = exhaustive_t_max(a.exhaustive_tmax, a.t, budget);
  std::string replay = replay_tail("search --exhaustive-tmax " + std::to_string(a.exhaustive_tmax) +
                                   " --t " + std::to_string(a.t));
  if (structured) {
    std::cout << dump(outcome_to_json(out, replay));
  } else {
    std::cout << search_status_name(out.status) << "\n";
    std::string idx;
    for (int i : out.indices) idx += (idx.empty() ? "" : ",") + std::to_string(i + 1);
    std::cout << "value=" << out.value << " indices=" << idx << "\n";
  }
  return status_code(out.status);
}

struct ProbeArgs {
  std::string file;
  std::string format = "text";
};

int run_probe(const ProbeArgs& a) {
  SquareFamily fam = parse_family(slurp(a.file));
  StaircaseReport rep = conjecture_probe(fam);
  if (a.format == "structured") {
    std::cout << dump(staircase_to_json(rep));
  } else {
    for (auto [t, holds] : rep.levels)
      std::cout << "t=" << t << (holds ? " holds" : " fails") << "\n";
    std::cout << "threshold=" << (rep.threshold ? std::to_string(*rep.threshold) : "none") << "\n";
    if (rep.converse) {
      std::string sub, failing;
      for (int i : rep.converse->subset) sub += (sub.empty() ? "" : ",") + std::to_string(i + 1);
      for (int i : rep.converse->failing_subsubset)
        failing += (failing.empty() ? "" : ",") + std::to_string(i + 1);
      std::cout << "converse subset=" << sub << " failing=" << failing << "\n";
    }
  }
  return rep.threshold ? 0 : 1;
}

struct TableArgs {
  int order = 0;
  std::string format = "text";
};

int run_table(const TableArgs& a) {
  OrderSummary sum = order_summary(a.order);
  if (a.format == "structured") {
    Json doc;
    doc["order"] = sum.order;
    Json rows = Json::array();
    for (const auto& row : sum.rows) {
      Json r;
      r["type"] = row.type;
      r["method"] = row.method;
      r["realizable"] = row.realizable;
      if (row.realizable) {
        r["count"] = row.count;
        r["min_degree"] = row.min_degree ? Json(*row.min_degree) : Json(nullptr);
      }
      rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    std::cout << dump(doc);
  } else {
    std::cout << render_table_text(sum);
  }
  return 0;
}

void add_format(CLI::App* cmd, std::string& fmt) {
  cmd->add_option("--format", fmt, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latin square construction, verification, and search"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* cgen = app.add_subcommand("gen", "construct squares and families");
  cgen->set_help_flag("--help", "print help");  // frees -h for the multiplier below
  cgen->add_option("--additive", gen.additive, "order for (i+hj) construction");
  cgen->add_option("--h", gen.h, "single multiplier (coprime to the order)");
  cgen->add_flag("--all-h", gen.all_h, "every coprime multiplier (a family)");
  cgen->add_flag("--minus", gen.minus, "use (i-hj) instead of (i+hj)");
  cgen->add_option("--multiplicative", gen.multiplicative, "order for (i*j) mod (order+1)");
  cgen->add_option("--gf", gen.gf, "prime power: finite-field family of q-1 squares");
  cgen->add_option("--develop", gen.develop, "file with one 1-based row to develop cyclically");
  cgen->add_flag("--shift", gen.shift, "expand the generated square into its row-shift family");
  cgen->add_option("--inflate", gen.inflate, "blow up the generated square into a frequency square");
  cgen->add_option("-o,--output", gen.out.path, "write here instead of stdout");
  add_format(cgen, gen.format);

  CheckArgs check;
  CLI::App* ccheck = app.add_subcommand("check", "validate a square, family, or frequency square");
  ccheck->add_option("file", check.file, "input file")->required();
  ccheck->add_option("--lambda", check.lambda, "check as a frequency square with this multiplicity");
  add_format(ccheck, check.format);

  OrthoArgs ortho;
  CLI::App* cortho = app.add_subcommand("ortho", "orthogonality verdicts for a family");
  cortho->add_option("file", ortho.file, "family file")->required();
  cortho->add_option("--t", ortho.t, "arity for the mutual check");
  cortho->add_option("--indices", ortho.indices, "1-based member indices, comma separated");
  cortho->add_flag("--min-degree", ortho.min_degree, "smallest t with mutual t-orthogonality");
  cortho->add_flag("--defect", ortho.defect_only, "print the defect of the selected superposition");
  add_format(cortho, ortho.format);

  SearchArgs search;
  CLI::App* csearch = app.add_subcommand("search", "enumeration and backtracking searches");
  csearch->add_option("--count", search.count, "count all squares of this order");
  csearch->add_flag("--reduced", search.reduced, "count reduced squares only");
  csearch->add_option("--stream", search.stream, "print every square of this order");
  csearch->add_option("--mate", search.mate, "square file: find an orthogonal mate");
  csearch->add_option("--max-subset", search.max_subset, "family file: largest mutually t-orthogonal subset");
  csearch->add_option("--exhaustive-tmax", search.exhaustive_tmax,
                      "order: largest mutually t-orthogonal set over all squares");
  csearch->add_option("--t", search.t, "arity (default 2)");
  csearch->add_option("--threads", search.threads, "worker threads");
  csearch->add_option("--budget-nodes", search.budget_nodes, "node budget");
  csearch->add_option("--budget-secs", search.budget_secs, "wall-clock budget");
  add_format(csearch, search.format);

  ProbeArgs probe;
  CLI::App* cprobe = app.add_subcommand("probe", "staircase levels and threshold for a family");
  cprobe->add_option("file", probe.file, "family file")->required();
  add_format(cprobe, probe.format);

  TableArgs table;
  CLI::App* ctable = app.add_subcommand("table", "constructions available at an order");
  ctable->add_option("order", table.order, "order")->required();
  add_format(ctable, table.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*cgen) return run_gen(gen);
    if (*ccheck) return run_check(check);
    if (*cortho) return run_ortho(ortho);
    if (*csearch) return run_search(search);
    if (*cprobe) return run_probe(probe);
    return run_table(table);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}
