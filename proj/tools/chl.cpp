#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "chl/serialize.hpp"
#include "chl/wordgen.hpp"

using namespace chl;

namespace {

struct Options {
  std::string family;
  int p = -1, q = -1;
  unsigned word_len_trace = 4;
  unsigned word_len_cusp = 6;
  unsigned precision = 128;
  std::string output = "text";
  std::string catalog_path;
  int jobs = 0;
  std::string pair_a, pair_b;
  std::string presentation_file;
};

Params make_params(const Options& opt) {
  Params params;
  if (opt.p >= 0) params.p.push_back(static_cast<unsigned>(opt.p));
  if (opt.q >= 0) params.p.push_back(static_cast<unsigned>(opt.q));
  return params;
}

// "G29:3", "G28:3,4", "B4_34_DM"
std::pair<std::string, Params> parse_selector(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon == std::string::npos ? text.size() : colon);
  Params params;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::istringstream is(rest);
    std::string tok;
    while (std::getline(is, tok, ','))
      params.p.push_back(static_cast<unsigned>(std::stoul(tok)));
  }
  return {name, params};
}

const Catalog& catalog_for(const Options& opt, std::optional<Catalog>& storage) {
  if (opt.catalog_path.empty()) return Catalog::builtin();
  std::ifstream in(opt.catalog_path);
  if (!in) fail(errc::bad_catalog, "cannot read catalog file " + opt.catalog_path);
  std::stringstream ss;
  ss << in.rdbuf();
  storage = Catalog::from_json_text(ss.str());
  return *storage;
}

int cmd_instantiate(const Options& opt) {
  std::optional<Catalog> storage;
  const Catalog& cat = catalog_for(opt, storage);
  GroupInstance g = cat.instantiate(opt.family, make_params(opt));
  if (opt.output == "json") {
    std::cout << instance_to_json(g) << "\n";
    return 0;
  }
  Signature s = g.hermitian().signature();
  std::cout << g.label() << "  branch " << g.branch_name << "\n";
  std::cout << "  field: Q(zeta_" << g.field->conductor() << "), embedding k="
            << g.field->embedding_k() << "\n";
  std::cout << "  signature: " << s.str() << "\n";
  std::cout << "  generators: " << g.gens.size()
            << (g.generators_integral() ? " (algebraic integer entries)" : "") << "\n";
  for (size_t i = 0; i < g.gens.size(); ++i) {
    std::cout << "  R" << i + 1 << ", multiplier " << g.gens[i].multiplier.pretty() << " ~ "
              << approx_string(g.gens[i].multiplier, opt.precision) << "\n"
              << g.gens[i].matrix.pretty() << "\n";
  }
  return 0;
}

int cmd_table3(const Options& opt) {
  std::optional<Catalog> storage;
  const Catalog& cat = catalog_for(opt, storage);
  bool all_match = true;
  std::ostringstream csv;
  csv << "family,params,cocompact,arithmetic,trace_field,match\n";
  if (opt.output == "text") {
    std::cout << "family      params   cocompact  arithmetic  trace_field   expected      match\n";
  }
  for (const auto& row : cat.table3()) {
    GroupInstance g = cat.instantiate(row.family, row.params);
    ArithmeticityVerdict v = arithmeticity(g, opt.word_len_trace);
    bool match =
        v.arithmetic == row.arithmetic && v.trace_field.descriptor == row.trace_field;
    all_match = all_match && match;
    std::string params = row.params.key();
    std::string params_csv =
        params.find(',') == std::string::npos ? params : "\"" + params + "\"";
    csv << row.family << "," << params_csv << "," << (row.cocompact ? "C" : "NC") << ","
        << (v.arithmetic ? "A" : "NA") << "," << v.trace_field.descriptor << ","
        << (match ? "yes" : "NO") << "\n";
    if (opt.output == "text") {
      std::ostringstream line;
      line.width(12);
      line << std::left << row.family;
      line.width(9);
      line << std::left << params;
      line.width(11);
      line << std::left << (row.cocompact ? "C" : "NC");
      line.width(12);
      line << std::left << (v.arithmetic ? "A" : "NA");
      line.width(14);
      line << std::left << v.trace_field.descriptor;
      line.width(14);
      line << std::left << (row.arithmetic ? std::string("A,") : std::string("NA,")) +
                               row.trace_field;
      line << (match ? "ok" : "DIFF");
      std::cout << line.str() << "\n";
    }
  }
  if (opt.output == "csv") std::cout << csv.str();
  if (opt.output == "json") {
    // one verdict object per row
    std::cout << "[\n";
    bool first = true;
    for (const auto& row : cat.table3()) {
      GroupInstance g = cat.instantiate(row.family, row.params);
      ArithmeticityVerdict v = arithmeticity(g, opt.word_len_trace);
      if (!first) std::cout << ",\n";
      first = false;
      std::cout << verdict_to_json(g, v);
    }
    std::cout << "\n]\n";
  }
  return all_match ? 0 : 1;
}

int cmd_arithmeticity(const Options& opt) {
  std::optional<Catalog> storage;
  const Catalog& cat = catalog_for(opt, storage);
  GroupInstance g = cat.instantiate(opt.family, make_params(opt));
  ArithmeticityVerdict v = arithmeticity(g, opt.word_len_trace);
  if (opt.output == "json") {
    std::cout << verdict_to_json(g, v) << "\n";
  } else {
    std::cout << g.label() << ": " << (v.arithmetic ? "arithmetic" : "NOT arithmetic")
              << ", adjoint trace field " << v.trace_field.descriptor << "\n";
    for (const auto& [k, s] : v.conjugate_signatures)
      std::cout << "  sigma_" << k << ": conjugate form signature " << s.str() << "\n";
    for (const auto& [w, val] : v.trace_field.witnesses)
      std::cout << "  witness |tr(" << word_to_string(w) << ")|^2 = " << val.pretty() << " ~ "
                << approx_string(val, opt.precision) << "\n";
  }
  return 0;
}

std::pair<CuspProfile, CuspSetup> cusp_profile_for(const Catalog& cat, const std::string& family,
                                                   const Params& params, unsigned word_len) {
  const FamilySpec& fam = cat.family(family);
  const ParamRow* row = fam.find_row(params);
  if (!row || !row->cusp)
    fail(errc::no_stratum_table, family + "(" + params.key() + ") has no recorded cusp data");
  GroupInstance g = cat.instantiate(family, params);
  CuspSetup setup = cusp_setup(g, *row->cusp);
  CuspProfile profile = translation_lattice(setup.generators, setup.form, word_len,
                                            row->cusp->expected_linear_part_order);
  return {std::move(profile), std::move(setup)};
}

int cmd_cusp(const Options& opt) {
  std::optional<Catalog> storage;
  const Catalog& cat = catalog_for(opt, storage);
  auto [profile, setup] = cusp_profile_for(cat, opt.family, make_params(opt), opt.word_len_cusp);
  if (opt.output == "json") {
    std::cout << cusp_profile_to_json(profile) << "\n";
  } else {
    std::cout << opt.family << " cusp profile (word length " << opt.word_len_cusp << ")\n";
    std::cout << "  linear part order: " << profile.linear_part_order << "\n";
    std::cout << "  translations found: " << profile.translations.size()
              << ", horizontal rank " << profile.horizontal_rank << "\n";
    if (profile.vertical_generator)
      std::cout << "  vertical generator: " << profile.vertical_generator->pretty() << " ~ "
                << approx_string(*profile.vertical_generator, opt.precision) << "\n";
    std::cout << "  horizontal norms:";
    for (const auto& n : profile.horizontal_norms)
      std::cout << " " << n.pretty() << " ~ " << approx_string(n, opt.precision) << ";";
    std::cout << "\n  complete: " << (profile.complete ? "yes" : "no") << "\n";
  }
  return profile.complete ? 0 : 1;
}

int cmd_incommensurable(const Options& opt) {
  std::optional<Catalog> storage;
  const Catalog& cat = catalog_for(opt, storage);
  auto [fam_a, par_a] = parse_selector(opt.pair_a);
  auto [fam_b, par_b] = parse_selector(opt.pair_b);
  auto [prof_a, setup_a] = cusp_profile_for(cat, fam_a, par_a, opt.word_len_cusp);
  auto [prof_b, setup_b] = cusp_profile_for(cat, fam_b, par_b, opt.word_len_cusp);
  IncommResult res = incommensurable_cusps(prof_a, prof_b);
  if (opt.output == "json") {
    std::cout << "{\"a\": \"" << opt.pair_a << "\", \"b\": \"" << opt.pair_b
              << "\", \"verdict\": \"" << (res.distinguished ? "INCOMMENSURABLE" : "not distinguished")
              << "\", \"witness_ratio\": " << elem_to_json(res.witness_ratio)
              << ", \"witness_approx\": \"" << approx_string(res.witness_ratio, opt.precision) << "\"}\n";
  } else {
    std::cout << opt.pair_a << " vs " << opt.pair_b << ": "
              << (res.distinguished ? "INCOMMENSURABLE" : "not distinguished") << "\n";
    std::cout << "  witness ratio: " << res.witness_ratio.pretty() << " ~ "
              << approx_string(res.witness_ratio, opt.precision) << "\n  " << res.note << "\n";
  }
  return 0;
}

int cmd_presentation(const Options& opt) {
  std::optional<Catalog> storage;
  const Catalog& cat = catalog_for(opt, storage);
  GroupInstance g = cat.instantiate(opt.family, make_params(opt));
  std::vector<Relation> relations;
  if (opt.presentation_file.empty()) {
    relations = g.relations; // the catalog's own set
  } else if (opt.presentation_file == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    relations = parse_presentation(ss.str());
  } else {
    std::ifstream in(opt.presentation_file);
    if (!in) fail(errc::malformed_word, "cannot read " + opt.presentation_file);
    std::stringstream ss;
    ss << in.rdbuf();
    relations = parse_presentation(ss.str());
  }
  if (relations.empty()) fail(errc::malformed_word, "no relations supplied");
  PresentationReport report = verify_presentation(g.generator_matrices(), relations);
  for (const auto& check : report.checks)
    std::cout << (check.pass ? "pass  " : "FAIL  ") << relation_to_string(check.relation) << "\n";
  if (!report.all_pass && report.checks[*report.first_failure].diff)
    std::cout << "first failing difference:\n"
              << report.checks[*report.first_failure].diff->pretty() << "\n";
  return report.all_pass ? 0 : 1;
}

int cmd_kappa(const Options& opt) {
  std::optional<Catalog> storage;
  const Catalog& cat = catalog_for(opt, storage);
  Params params = make_params(opt);
  std::cout << "strata of " << opt.family << " at (" << params.key() << "):\n";
  for (const auto& s : cat.strata(opt.family)) {
    Rational k = kappa(s, params);
    std::cout << "  " << s.name << " (codim " << s.codim << "): kappa = " << rat_to_string(k)
              << (k == 1 ? "   <- cusp" : "") << "\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact models, arithmeticity verdicts and cusp invariants for "
               "the CHL lattice catalog"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;

  app.add_option("--catalog", opt.catalog_path, "catalog JSON overriding the built-in data");
  app.add_option("--jobs", opt.jobs, "worker threads for word enumeration");
  app.add_option("--precision", opt.precision, "numeric display precision in bits");

  auto add_family = [&](CLI::App* cmd, bool required) {
    auto* o = cmd->add_option("--family", opt.family, "family name (e.g. G29, B4_34_DM)");
    if (required) o->required();
    cmd->add_option("--p", opt.p, "first reflection order");
    cmd->add_option("--q", opt.q, "second reflection order (two-orbit families)");
  };

  CLI::App* inst = app.add_subcommand("instantiate", "build a catalog instance");
  add_family(inst, true);
  inst->add_option("--output", opt.output, "text|json");

  CLI::App* table = app.add_subcommand("table3", "verdict table for every lattice row");
  table->add_option("--word-len", opt.word_len_trace, "trace sampling word length");
  table->add_option("--output", opt.output, "text|csv|json");

  CLI::App* arith = app.add_subcommand("arithmeticity", "verdict for one instance");
  add_family(arith, true);
  arith->add_option("--word-len", opt.word_len_trace, "trace sampling word length");
  arith->add_option("--output", opt.output, "text|json");

  CLI::App* cusp = app.add_subcommand("cusp", "cusp translation lattice profile");
  add_family(cusp, true);
  cusp->add_option("--word-len", opt.word_len_cusp, "cusp word length");
  cusp->add_option("--output", opt.output, "text|json");

  CLI::App* incomm = app.add_subcommand("incommensurable", "compare two cusp profiles");
  incomm->add_option("--a", opt.pair_a, "first instance, e.g. B4_34_DM")->required();
  incomm->add_option("--b", opt.pair_b, "second instance, e.g. G29:3")->required();
  incomm->add_option("--word-len", opt.word_len_cusp, "cusp word length");
  incomm->add_option("--output", opt.output, "text|json");

  CLI::App* pres = app.add_subcommand("presentation", "verify relations against an instance");
  add_family(pres, true);
  pres->add_option("--relations", opt.presentation_file,
                   "relation file (one per line); default: the catalog's set");

  CLI::App* kap = app.add_subcommand("kappa", "stratum weights for an arrangement");
  kap->add_option("--family", opt.family, "arrangement name (B4, G29)")->required();
  kap->add_option("--p", opt.p, "first reflection order")->required();
  kap->add_option("--q", opt.q, "second reflection order");

  CLI11_PARSE(app, argc, argv);
  words::set_threads(opt.jobs);

  try {
    if (inst->parsed()) return cmd_instantiate(opt);
    if (table->parsed()) return cmd_table3(opt);
    if (arith->parsed()) return cmd_arithmeticity(opt);
    if (cusp->parsed()) return cmd_cusp(opt);
    if (incomm->parsed()) return cmd_incommensurable(opt);
    if (pres->parsed()) return cmd_presentation(opt);
    if (kap->parsed()) return cmd_kappa(opt);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
