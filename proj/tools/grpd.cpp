// Command-line interface over the groupoid library: every operation reads
// the documented JSON formats and emits deterministic text or JSON reports.
//
// Exit codes: 0 pass/success, 1 fail or No verdict, 2 Unknown or resource
// budget exceeded, 3 parse error.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "grpd/cosheaf.hpp"
#include "grpd/json_io.hpp"

using namespace grpd;

namespace {

struct Options {
  std::string input, cover, complex_path;
  std::uint64_t budget = kDefaultBudget;
  std::string battery = "z2,z3,s3,two";
  std::string good_reading = "componentwise";
  bool json = false;
};

std::string dirname_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Yes: return 0;
    case Verdict::No: return 1;
    default: return 2;
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::pair<std::string, GroupoidPtr>> parse_battery(const std::string& list) {
  std::vector<std::pair<std::string, GroupoidPtr>> out;
  auto all = default_battery();
  std::size_t at = 0;
  while (at <= list.size()) {
    std::size_t comma = list.find(',', at);
    std::string name = list.substr(at, comma == std::string::npos ? comma : comma - at);
    if (!name.empty()) {
      bool found = false;
      for (const auto& [n, g] : all)
        if (n == name) {
          out.push_back({n, g});
          found = true;
        }
      if (!found) throw ParseError("unknown battery groupoid '" + name + "'");
    }
    if (comma == std::string::npos) break;
    at = comma + 1;
  }
  if (out.empty()) throw ParseError("empty battery");
  return out;
}

GoodReading parse_reading(const std::string& s) {
  if (s == "strict") return GoodReading::Strict;
  if (s == "componentwise") return GoodReading::Componentwise;
  throw ParseError("good-reading must be strict or componentwise");
}

Json report_header(const std::string& subcommand) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "report";
  j["subcommand"] = subcommand;
  return j;
}

CoverNerve load_nerve(const Options& opt, const std::string& complex_file) {
  ComplexPtr x = share(complex_from_json(load_json_file(complex_file)));
  if (opt.cover.empty()) throw ParseError("this subcommand requires --cover");
  auto cover = cover_from_json(load_json_file(opt.cover), x);
  return build_nerve(cover);
}

int cmd_validate(const Options& opt) {
  Json j = load_json_file(opt.input);
  std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "";
  ValidationReport rep;
  if (kind == "groupoid") {
    rep = validate(groupoid_from_json(j));
  } else if (kind == "presentation") {
    rep = validate(presentation_from_json(j));
  } else if (kind == "complex") {
    rep = validate(complex_from_json(j));
  } else if (kind == "diagram") {
    const Json& values = j.at("values");
    Json first = values.begin().value();
    if (first.is_string()) {
      std::string path = first.get<std::string>();
      std::string dir = dirname_of(opt.input);
      if (!dir.empty() && !path.empty() && path.front() != '/') path = dir + "/" + path;
      first = load_json_file(path);
    }
    std::string vk = first.at("kind").get<std::string>();
    if (vk == "presentation")
      rep = validate_diagram(pres_diagram_from_json(j, dirname_of(opt.input)));
    else
      rep = validate_diagram(concrete_diagram_from_json(j, dirname_of(opt.input)));
  } else {
    throw ParseError(opt.input + ": unknown kind '" + kind + "'");
  }
  std::sort(rep.violations.begin(), rep.violations.end());
  if (opt.json) {
    Json out = report_header("validate");
    out["valid"] = rep.ok();
    out["violations"] = rep.violations;
    emit(out);
  } else {
    if (rep.ok()) {
      std::cout << "valid\n";
    } else {
      for (const auto& v : rep.violations) std::cout << "violation: " << v << "\n";
    }
  }
  return rep.ok() ? 0 : 1;
}

int cmd_pi0(const Options& opt) {
  Complex2 c = complex_from_json(load_json_file(opt.input));
  Pi0 p = pi0(c);
  if (opt.json) {
    Json out = report_header("pi0");
    out["components"] = p.component_names;
    Json vm = Json::object();
    for (Index v = 0; v < c.skeleton.vertices.size(); ++v)
      vm[c.skeleton.vertices.name(v)] = p.component_names[p.vertex_component[v]];
    out["vertex_component"] = std::move(vm);
    emit(out);
  } else {
    std::cout << p.size() << " component(s)";
    for (const auto& n : p.component_names) std::cout << " " << n;
    std::cout << "\n";
  }
  return 0;
}

int cmd_pi1(const Options& opt) {
  Complex2 c = complex_from_json(load_json_file(opt.input));
  PresentedGroupoid p = pi1(c);
  auto fp = fingerprint(p, opt.budget);
  if (opt.json) {
    Json out = report_header("pi1");
    out["presentation"] = to_json(p);
    out["fingerprint"] = to_json(fp);
    emit(out);
  } else {
    std::cout << "pi1: " << p.graph.vertices.size() << " objects, " << p.graph.edges.size()
              << " generators, " << p.relations.size() << " relations\n"
              << "fingerprint: " << to_string(fp) << "\n";
  }
  return 0;
}

int cmd_fingerprint(const Options& opt) {
  Json j = load_json_file(opt.input);
  std::string kind = j.contains("kind") ? j["kind"].get<std::string>() : "";
  EquivalenceInvariant fp;
  if (kind == "groupoid")
    fp = fingerprint(groupoid_from_json(j));
  else if (kind == "presentation")
    fp = fingerprint(presentation_from_json(j), opt.budget);
  else
    throw ParseError(opt.input + ": fingerprint expects a groupoid or presentation");
  if (opt.json) {
    Json out = report_header("fingerprint");
    out["fingerprint"] = to_json(fp);
    emit(out);
  } else {
    std::cout << to_string(fp) << "\n";
  }
  return 0;
}

int cmd_nerve(const Options& opt) {
  CoverNerve n = load_nerve(opt, opt.input);
  bool good = is_good_cover(n, parse_reading(opt.good_reading), opt.budget);
  if (opt.json) {
    Json out = report_header("nerve");
    out["elements"] = n.poset.elements.names();
    out["good"] = good;
    // the induced diagram, in the same format the diagram subcommands read
    Json diagram;
    diagram["schema_version"] = kSchemaVersion;
    diagram["kind"] = "diagram";
    diagram["variance"] = "covariant";
    Json poset;
    poset["elements"] = n.poset.elements.names();
    Json leq = Json::array();
    for (auto [i, j] : n.poset.strict_pairs())
      leq.push_back({n.poset.elements.name(i), n.poset.elements.name(j)});
    poset["leq"] = std::move(leq);
    diagram["poset"] = std::move(poset);
    Json pieces = Json::object();
    for (std::size_t p = 0; p < n.piece.size(); ++p)
      pieces[n.poset.elements.name(static_cast<Index>(p))] = to_json(*n.diagram.value[p]);
    diagram["values"] = std::move(pieces);
    Json transitions = Json::array();
    for (auto [i, j] : n.poset.strict_pairs()) {
      Json t = to_json(n.diagram.psi(i, j));
      t["from"] = n.poset.elements.name(i);
      t["to"] = n.poset.elements.name(j);
      transitions.push_back(std::move(t));
    }
    diagram["transitions"] = std::move(transitions);
    out["diagram"] = std::move(diagram);
    emit(out);
  } else {
    std::cout << n.poset.elements.size() << " nerve element(s):";
    for (const auto& name : n.poset.elements.names()) std::cout << " " << name;
    std::cout << "\ngood cover (" << opt.good_reading << "): " << (good ? "yes" : "no")
              << "\n";
  }
  return 0;
}

int cmd_lim(const Options& opt, bool two) {
  ConcreteDiagram d =
      concrete_diagram_from_json(load_json_file(opt.input), dirname_of(opt.input));
  GroupoidPtr g = two ? diagram_tl(d, opt.budget).groupoid : diagram_lim(d).groupoid;
  if (opt.json) {
    Json out = report_header(two ? "tl" : "lim");
    out["groupoid"] = to_json(*g);
    out["fingerprint"] = to_json(fingerprint(*g));
    emit(out);
  } else {
    std::cout << (two ? "tl" : "lim") << ": " << g->object_count() << " objects, "
              << g->morphism_count() << " morphisms\n"
              << "fingerprint: " << to_string(fingerprint(*g)) << "\n";
  }
  return 0;
}

int cmd_colim(const Options& opt, bool two) {
  PresDiagram d =
      pres_diagram_from_json(load_json_file(opt.input), dirname_of(opt.input));
  PresentedPtr g = two ? diagram_tc(d).groupoid : diagram_colim(d).groupoid;
  auto fp = fingerprint(*g, opt.budget);
  if (opt.json) {
    Json out = report_header(two ? "tc" : "colim");
    out["presentation"] = to_json(*g);
    out["fingerprint"] = to_json(fp);
    emit(out);
  } else {
    std::cout << (two ? "tc" : "colim") << ": " << g->graph.vertices.size() << " objects, "
              << g->graph.edges.size() << " generators, " << g->relations.size()
              << " relations\n"
              << "fingerprint: " << to_string(fp) << "\n";
  }
  return 0;
}

int cmd_delta(const Options& opt) {
  PresDiagram d =
      pres_diagram_from_json(load_json_file(opt.input), dirname_of(opt.input));
  DeltaResult r = delta_comparison(d, opt.budget);
  if (opt.json) {
    Json out = report_header("delta");
    out["verdict"] = to_string(r.verdict);
    out["comparison"] = to_json(r.comparison);
    out["tc_fingerprint"] = to_json(fingerprint(*r.tc.groupoid, opt.budget));
    out["colim_fingerprint"] = to_json(fingerprint(*r.colim.groupoid, opt.budget));
    emit(out);
  } else {
    std::cout << "delta equivalence: " << to_string(r.verdict) << "\n";
  }
  return verdict_code(r.verdict);
}

int cmd_deform(const Options& opt) {
  DeformSquare s = square_from_json(load_json_file(opt.input));
  DeformResult r = deform(s.i1, s.i2, s.j1, s.j2, s.lambda);
  if (opt.json) {
    Json out = report_header("deform");
    out["j1_prime"] = to_json(r.j1_prime);
    out["kappa"] = to_json(r.kappa);
    emit(out);
  } else {
    std::cout << "deform: j1' and kappa constructed on " << s.B->object_count()
              << " objects\n";
  }
  return 0;
}

int cmd_filtered_colim(const Options& opt) {
  ConcreteDiagram d =
      concrete_diagram_from_json(load_json_file(opt.input), dirname_of(opt.input));
  ConcreteGroupoid g = filtered_colim(d);
  if (opt.json) {
    Json out = report_header("filtered-colim");
    out["groupoid"] = to_json(g);
    out["fingerprint"] = to_json(fingerprint(g));
    emit(out);
  } else {
    std::cout << "filtered colimit: " << g.object_count() << " objects, "
              << g.morphism_count() << " morphisms\n"
              << "fingerprint: " << to_string(fingerprint(g)) << "\n";
  }
  return 0;
}

int cmd_check_cosheaf(const Options& opt) {
  ComplexPtr x = share(complex_from_json(load_json_file(opt.input)));
  if (opt.cover.empty()) throw ParseError("check-cosheaf requires --cover");
  auto cover = cover_from_json(load_json_file(opt.cover), x);
  auto rep = check_cosheaf_sets(pi0_cosheaf(), full_subcomplex(x), cover);
  if (opt.json) {
    Json out = report_header("check-cosheaf");
    out["pass"] = rep.pass;
    out["coequalizer_size"] = rep.coequalizer_size;
    out["value_size"] = rep.value_size;
    out["witness"] = rep.witness;
    emit(out);
  } else {
    std::cout << "cosheaf check: " << (rep.pass ? "pass" : "fail (" + rep.witness + ")")
              << "\n";
  }
  return rep.pass ? 0 : 1;
}

int cmd_check_shst(const Options& opt, bool stack) {
  CoverNerve n = load_nerve(opt, opt.input);
  auto battery = parse_battery(opt.battery);
  Verdict overall = Verdict::Yes;
  Json reports = Json::array();
  for (const auto& [name, g] : battery) {
    ShStReport rep = stack ? check_st(n, g, opt.budget) : check_sh(n, g, opt.budget);
    if (!opt.json)
      std::cout << rep.condition << " vs " << name << ": " << to_string(rep.verdict)
                << (rep.witness.empty() ? "" : " (" + rep.witness + ")") << "\n";
    Json jr;
    jr["battery"] = name;
    jr["condition"] = rep.condition;
    jr["verdict"] = to_string(rep.verdict);
    jr["witness"] = rep.witness;
    reports.push_back(std::move(jr));
    if (rep.verdict == Verdict::No) overall = Verdict::No;
    if (rep.verdict == Verdict::Unknown && overall == Verdict::Yes)
      overall = Verdict::Unknown;
  }
  if (opt.json) {
    Json out = report_header(stack ? "check-st" : "check-sh");
    out["verdict"] = to_string(overall);
    out["reports"] = std::move(reports);
    emit(out);
  }
  return verdict_code(overall);
}

int cmd_vankampen(const Options& opt) {
  ComplexPtr x = share(complex_from_json(load_json_file(opt.input)));
  if (opt.cover.empty()) throw ParseError("vankampen requires --cover");
  auto cover = cover_from_json(load_json_file(opt.cover), x);
  if (cover.size() != 2) throw ParseError("vankampen requires a two-member cover");
  auto rep = check_vankampen(x, cover[0], cover[1], parse_battery(opt.battery), opt.budget);
  if (opt.json) {
    Json out = report_header("vankampen");
    out["pushout"] = to_string(rep.pushout);
    out["two_pushout"] = to_string(rep.two_pushout);
    out["fingerprint_whole"] = to_json(rep.fp_whole);
    out["fingerprint_colim"] = to_json(rep.fp_colim);
    out["fingerprint_tc"] = to_json(rep.fp_tc);
    out["witness"] = rep.witness;
    emit(out);
  } else {
    std::cout << "pushout: " << to_string(rep.pushout)
              << "\n2-pushout: " << to_string(rep.two_pushout)
              << "\nfingerprint: " << to_string(rep.fp_whole) << "\n";
    if (!rep.witness.empty()) std::cout << "witness: " << rep.witness << "\n";
  }
  return rep.pushout == Verdict::Yes && rep.two_pushout == Verdict::Yes ? 0 : 1;
}

int cmd_terminal_map(const Options& opt) {
  PresDiagram q =
      pres_diagram_from_json(load_json_file(opt.input), dirname_of(opt.input));
  if (opt.complex_path.empty()) throw ParseError("terminal-map requires --complex");
  CoverNerve target = load_nerve(opt, opt.complex_path);
  TerminalMapResult r =
      induced_map_to_terminal(q, target, parse_reading(opt.good_reading), opt.budget);
  if (opt.json) {
    Json out = report_header("terminal-map");
    out["map"] = to_json(r.map);
    out["relations_preserved"] = to_string(r.relations_preserved);
    emit(out);
  } else {
    std::cout << "terminal map constructed; relations preserved: "
              << to_string(r.relations_preserved) << "\n";
  }
  return verdict_code(r.relations_preserved);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grpd: finite and finitely presented groupoid calculator"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("GRPD_BUDGET")) opt.budget = std::strtoull(env, nullptr, 10);
  app.add_option("--budget", opt.budget, "resource budget (closure-table cells / objects)")
      ->check(CLI::PositiveNumber);
  app.add_option("--battery", opt.battery, "comma list from z2,z3,s3,two");
  app.add_option("--good-reading", opt.good_reading, "strict | componentwise");
  app.add_flag("--json", opt.json, "machine-readable JSON reports");

  std::string pending;
  auto add = [&](const std::string& name, const std::string& desc, bool with_cover = false,
                 bool with_complex = false) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("input", opt.input, "input file")->required();
    if (with_cover) sub->add_option("--cover", opt.cover, "cover file");
    if (with_complex) sub->add_option("--complex", opt.complex_path, "complex file");
    sub->callback([&, name] { pending = name; });
    return sub;
  };

  add("validate", "validate a groupoid, presentation, complex, or diagram file");
  add("pi0", "connected components of a complex");
  add("pi1", "edge-path fundamental groupoid of a complex");
  add("nerve", "cover nerve of a complex", true);
  add("lim", "limit of a contravariant concrete diagram");
  add("tl", "2-limit of a contravariant concrete diagram");
  add("colim", "colimit of a covariant presented diagram");
  add("tc", "2-colimit of a covariant presented diagram");
  add("delta", "comparison functor tc -> colim and its equivalence verdict");
  add("deform", "deformation of a 2-commuting square");
  add("filtered-colim", "colimit of a covariant concrete diagram over a filtered poset");
  add("check-cosheaf", "coequalizer check for the pi0 cosheaf", true);
  add("check-sh", "sheaf condition for hom(pi1(-), g) over a cover", true);
  add("check-st", "stack condition for hom(pi1(-), g) over a cover", true);
  add("vankampen", "pushout and 2-pushout verdicts for a two-member cover", true);
  add("terminal-map", "essentially unique map into the fundamental-groupoid costack", true,
      true);
  add("fingerprint", "equivalence fingerprint of a groupoid or presentation");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pending == "validate") return cmd_validate(opt);
    if (pending == "pi0") return cmd_pi0(opt);
    if (pending == "pi1") return cmd_pi1(opt);
    if (pending == "nerve") return cmd_nerve(opt);
    if (pending == "lim") return cmd_lim(opt, false);
    if (pending == "tl") return cmd_lim(opt, true);
    if (pending == "colim") return cmd_colim(opt, false);
    if (pending == "tc") return cmd_colim(opt, true);
    if (pending == "delta") return cmd_delta(opt);
    if (pending == "deform") return cmd_deform(opt);
    if (pending == "filtered-colim") return cmd_filtered_colim(opt);
    if (pending == "check-cosheaf") return cmd_check_cosheaf(opt);
    if (pending == "check-sh") return cmd_check_shst(opt, false);
    if (pending == "check-st") return cmd_check_shst(opt, true);
    if (pending == "vankampen") return cmd_vankampen(opt);
    if (pending == "terminal-map") return cmd_terminal_map(opt);
    if (pending == "fingerprint") return cmd_fingerprint(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
