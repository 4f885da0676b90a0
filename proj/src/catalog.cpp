#include "chl/catalog.hpp"

#include <algorithm>
#include <sstream>

#include "chl/classify.hpp"
#include "json.hpp"

namespace chl {

using nlohmann::json;

const std::string& builtin_catalog_json();

std::string Params::key() const {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s;
}

const ParamRow* FamilySpec::find_row(const Params& params) const {
  for (const auto& row : rows)
    if (row.params == params) return &row;
  return nullptr;
}

std::vector<MatC> GroupInstance::generator_matrices() const {
  std::vector<MatC> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.matrix);
  return out;
}

std::vector<unsigned> GroupInstance::integral_generator_indices() const {
  if (!spec->integral_generators.empty()) return spec->integral_generators;
  std::vector<unsigned> all(gens.size());
  for (unsigned i = 0; i < gens.size(); ++i) all[i] = i + 1;
  return all;
}

bool GroupInstance::generators_integral() const {
  for (unsigned idx : integral_generator_indices()) {
    const MatC& m = gens[idx - 1].matrix;
    for (unsigned i = 0; i < m.rows(); ++i)
      for (unsigned j = 0; j < m.cols(); ++j)
        for (const auto& q : m.at(i, j).coeffs())
          if (q.get_den() != 1) return false;
  }
  return true;
}

std::string GroupInstance::label() const {
  std::string s = spec->name;
  if (!params.p.empty()) s += "(" + params.key() + ")";
  return s;
}

namespace {

std::string substitute_params(std::string text, const Params& params) {
  auto replace_all = [&](const std::string& from, const std::string& to) {
    size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
      text.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  if (params.p.size() >= 2) {
    replace_all("P1", std::to_string(params.p[0]));
    replace_all("P2", std::to_string(params.p[1]));
  }
  if (params.p.size() == 1) replace_all("P", std::to_string(params.p[0]));
  return text;
}

std::vector<std::pair<std::string, std::string>> load_symbol_defs(const json& j) {
  std::vector<std::pair<std::string, std::string>> defs;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      fail(errc::bad_catalog, "symbol definition must be a [name, expr] pair");
    defs.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
  }
  return defs;
}

std::vector<BranchSpec> load_branches(const json& j) {
  std::vector<BranchSpec> out;
  for (const auto& b : j) {
    BranchSpec spec;
    spec.name = b.at("name").get<std::string>();
    if (b.contains("symbols")) spec.symbol_defs = load_symbol_defs(b["symbols"]);
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<std::vector<std::string>> load_string_matrix(const json& j) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : j) {
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(e.get<std::string>());
    rows.push_back(std::move(r));
  }
  return rows;
}

MatC eval_matrix(const std::vector<std::vector<std::string>>& tmpl, const CycField::Ptr& f,
                 const ExprEnv& env) {
  MatC m(f, static_cast<unsigned>(tmpl.size()),
         tmpl.empty() ? 0u : static_cast<unsigned>(tmpl[0].size()));
  for (unsigned i = 0; i < m.rows(); ++i) {
    if (tmpl[i].size() != m.cols()) fail(errc::bad_catalog, "ragged matrix template");
    for (unsigned j = 0; j < m.cols(); ++j) m.at(i, j) = eval_expr(tmpl[i][j], f, env);
  }
  return m;
}

std::vector<CycElem> eval_vector(const std::vector<std::string>& tmpl, const CycField::Ptr& f,
                                 const ExprEnv& env) {
  std::vector<CycElem> v;
  v.reserve(tmpl.size());
  for (const auto& e : tmpl) v.push_back(eval_expr(e, f, env));
  return v;
}

// polar vector of an explicit reflection matrix: any nonzero column of R - I
std::vector<CycElem> polar_from_matrix(const MatC& r) {
  MatC d = r - MatC::identity(r.field(), r.rows());
  for (unsigned j = 0; j < d.cols(); ++j) {
    bool nonzero = false;
    for (unsigned i = 0; i < d.rows(); ++i)
      if (!d.at(i, j).is_zero()) nonzero = true;
    if (!nonzero) continue;
    std::vector<CycElem> v(d.rows(), r.field()->zero());
    for (unsigned i = 0; i < d.rows(); ++i) v[i] = d.at(i, j);
    return v;
  }
  fail(errc::bad_catalog, "explicit generator equals the identity");
}

} // namespace

Catalog Catalog::from_json_text(const std::string& text) {
  Catalog cat;
  json doc = json::parse(text);
  if (doc.contains("notes"))
    for (const auto& n : doc["notes"]) cat.notes_.push_back(n.get<std::string>());

  for (const auto& jf : doc.at("families")) {
    FamilySpec fam;
    fam.name = jf.at("name").get<std::string>();
    fam.dim = jf.at("dim").get<unsigned>();
    fam.mirror_orbits = jf.value("mirror_orbits", 1u);
    fam.metadata_only = jf.value("metadata_only", false);
    fam.in_table3 = jf.value("in_table3", true) && !fam.metadata_only;
    if (jf.contains("symbols")) fam.symbol_defs = load_symbol_defs(jf["symbols"]);
    if (jf.contains("post_branch_symbols"))
      fam.post_branch_symbols = load_symbol_defs(jf["post_branch_symbols"]);
    if (jf.contains("form")) fam.form_template = load_string_matrix(jf["form"]);
    if (jf.contains("branches")) fam.branches = load_branches(jf["branches"]);
    fam.selected_branch = jf.value("selected_branch", std::string{});
    if (jf.contains("integral_generators"))
      for (const auto& i : jf["integral_generators"]) fam.integral_generators.push_back(i.get<unsigned>());
    if (jf.contains("relations"))
      for (const auto& r : jf["relations"]) fam.relation_lines.push_back(r.get<std::string>());
    if (jf.contains("trace_witnesses"))
      for (const auto& w : jf["trace_witnesses"]) {
        Word word;
        for (const auto& letter : w) word.push_back(letter.get<int>());
        fam.trace_witnesses.push_back(std::move(word));
      }

    if (jf.contains("generators")) {
      const auto& jg = jf["generators"];
      std::string kind = jg.at("type").get<std::string>();
      if (kind == "standard")
        fam.generators.kind = GeneratorSpec::Kind::standard_polars;
      else if (kind == "explicit")
        fam.generators.kind = GeneratorSpec::Kind::explicit_matrices;
      else if (kind == "polars")
        fam.generators.kind = GeneratorSpec::Kind::polar_list;
      else
        fail(errc::bad_catalog, "unknown generator kind: " + kind);
      for (const auto& m : jg.at("multipliers")) fam.generators.multipliers.push_back(m.get<std::string>());
      if (jg.contains("matrices"))
        for (const auto& m : jg["matrices"]) fam.generators.matrices.push_back(load_string_matrix(m));
      if (jg.contains("polars"))
        for (const auto& p : jg["polars"]) {
          std::vector<std::string> v;
          for (const auto& e : p) v.push_back(e.get<std::string>());
          fam.generators.polars.push_back(std::move(v));
        }
      if (jg.contains("extra"))
        for (const auto& e : jg["extra"]) {
          GeneratorSpec::Extra ex;
          for (const auto& c : e.at("polar")) ex.polar.push_back(c.get<std::string>());
          ex.multiplier = e.at("multiplier").get<std::string>();
          fam.generators.extra.push_back(std::move(ex));
        }
    }

    for (const auto& jr : jf.at("rows")) {
      ParamRow row;
      for (const auto& p : jr.at("params")) row.params.p.push_back(p.get<unsigned>());
      row.conductor = jr.value("conductor", 1u);
      row.cocompact = jr.at("cocompact").get<bool>();
      row.expected_arithmetic = jr.at("arithmetic").get<bool>();
      row.expected_trace_field = jr.value("trace_field", std::string{});
      if (jr.contains("branches")) row.branches = load_branches(jr["branches"]);
      row.selected_branch = jr.value("selected_branch", std::string{});
      if (jr.contains("cusp")) {
        const auto& jc = jr["cusp"];
        CuspSpec cusp;
        for (const auto& g : jc.at("generators")) cusp.generators.push_back(g.get<unsigned>());
        if (jc.contains("extra_symbols")) cusp.extra_symbols = load_symbol_defs(jc["extra_symbols"]);
        if (jc.contains("fixed_vector"))
          for (const auto& e : jc["fixed_vector"]) cusp.fixed_vector.push_back(e.get<std::string>());
        if (jc.contains("basis_change")) cusp.basis_change = load_string_matrix(jc["basis_change"]);
        if (jc.contains("adapted_form")) cusp.adapted_form = load_string_matrix(jc["adapted_form"]);
        cusp.expected_linear_part_order = jc.value("expected_linear_part_order", 0u);
        row.cusp = std::move(cusp);
      }
      fam.rows.push_back(std::move(row));
    }
    cat.families_.push_back(std::move(fam));
  }

  if (doc.contains("strata"))
    for (const auto& [arrangement, table] : doc["strata"].items()) {
      std::vector<StratumData> list;
      for (const auto& js : table) {
        StratumData s;
        s.name = js.at("name").get<std::string>();
        s.codim = js.at("codim").get<unsigned>();
        for (const auto& c : js.at("orbit_counts")) s.orbit_counts.push_back(c.get<unsigned>());
        list.push_back(std::move(s));
      }
      cat.strata_[arrangement] = std::move(list);
    }
  return cat;
}

const Catalog& Catalog::builtin() {
  static const Catalog cat = from_json_text(builtin_catalog_json());
  return cat;
}

const FamilySpec& Catalog::family(const std::string& name) const {
  for (const auto& f : families_)
    if (f.name == name) return f;
  fail(errc::unknown_family, "no such family: " + name);
}

std::vector<Table3Row> Catalog::table3() const {
  std::vector<Table3Row> rows;
  for (const auto& f : families_) {
    if (!f.in_table3) continue;
    for (const auto& r : f.rows)
      rows.push_back(Table3Row{f.name, r.params, r.cocompact, r.expected_arithmetic,
                               r.expected_trace_field});
  }
  return rows;
}

GroupInstance Catalog::build_instance(const FamilySpec& fam, const ParamRow& row,
                                      const BranchSpec& branch) const {
  GroupInstance inst;
  inst.spec = &fam;
  inst.params = row.params;
  inst.branch_name = branch.name;
  inst.field = CycField::get(row.conductor);

  for (const auto& [name, expr] : fam.symbol_defs)
    inst.env[name] = eval_expr(substitute_params(expr, row.params), inst.field, inst.env);
  for (const auto& [name, expr] : branch.symbol_defs)
    inst.env[name] = eval_expr(substitute_params(expr, row.params), inst.field, inst.env);
  for (const auto& [name, expr] : fam.post_branch_symbols)
    inst.env[name] = eval_expr(substitute_params(expr, row.params), inst.field, inst.env);

  inst.form = HermForm(eval_matrix(fam.form_template, inst.field, inst.env));
  const HermForm& h = *inst.form;

  std::vector<CycElem> multipliers;
  for (const auto& m : fam.generators.multipliers)
    multipliers.push_back(eval_expr(m, inst.field, inst.env));

  switch (fam.generators.kind) {
    case GeneratorSpec::Kind::standard_polars: {
      if (multipliers.size() != fam.dim) fail(errc::bad_catalog, "multiplier count != dim");
      for (unsigned j = 0; j < fam.dim; ++j) {
        std::vector<CycElem> e(fam.dim, inst.field->zero());
        e[j] = inst.field->one();
        inst.gens.push_back(Reflection::build(h, e, multipliers[j]));
      }
      break;
    }
    case GeneratorSpec::Kind::polar_list: {
      if (multipliers.size() != fam.generators.polars.size())
        fail(errc::bad_catalog, "multiplier count != polar count");
      for (size_t j = 0; j < fam.generators.polars.size(); ++j)
        inst.gens.push_back(Reflection::build(
            h, eval_vector(fam.generators.polars[j], inst.field, inst.env), multipliers[j]));
      break;
    }
    case GeneratorSpec::Kind::explicit_matrices: {
      if (multipliers.size() != fam.generators.matrices.size())
        fail(errc::bad_catalog, "multiplier count != matrix count");
      for (size_t j = 0; j < fam.generators.matrices.size(); ++j) {
        MatC m = eval_matrix(fam.generators.matrices[j], inst.field, inst.env);
        Reflection refl = Reflection::build(h, polar_from_matrix(m), multipliers[j]);
        if (refl.matrix != m)
          fail(errc::bad_catalog, fam.name + ": explicit generator " + std::to_string(j + 1) +
                                      " is not the reflection determined by its polar vector");
        inst.gens.push_back(std::move(refl));
      }
      break;
    }
  }
  for (const auto& ex : fam.generators.extra)
    inst.gens.push_back(Reflection::build(h, eval_vector(ex.polar, inst.field, inst.env),
                                          eval_expr(ex.multiplier, inst.field, inst.env)));

  for (const auto& line : fam.relation_lines)
    inst.relations.push_back(parse_relation(substitute_params(line, row.params)));

  PresentationReport report = verify_presentation(inst.generator_matrices(), inst.relations);
  if (!report.all_pass)
    fail(errc::bad_catalog,
         fam.name + "(" + row.params.key() + ") branch " + branch.name +
             " fails its presentation at relation " +
             relation_to_string(report.checks[*report.first_failure].relation));
  return inst;
}

GroupInstance Catalog::instantiate(const std::string& family, const Params& params) const {
  const FamilySpec& fam = this->family(family);
  if (fam.metadata_only)
    fail(errc::metadata_only_family,
         family + " is a metadata-only family (no matrix model is shipped)");
  const ParamRow* row = fam.find_row(params);
  if (!row) fail(errc::disallowed_params, family + " has no parameters (" + params.key() + ")");

  const auto& branches = row->branches.empty() ? fam.branches : row->branches;
  const std::string& selected =
      row->selected_branch.empty() ? fam.selected_branch : row->selected_branch;
  BranchSpec branch; // default: single unnamed branch
  branch.name = "principal";
  if (!branches.empty()) {
    auto it = std::find_if(branches.begin(), branches.end(),
                           [&](const BranchSpec& b) { return b.name == selected; });
    if (it == branches.end()) fail(errc::bad_catalog, "selected branch not found for " + family);
    branch = *it;
  }
  GroupInstance inst = build_instance(fam, *row, branch);
  Signature sig = inst.hermitian().signature();
  if (!(sig.pos == fam.dim - 1 && sig.neg == 1 && sig.zero == 0))
    fail(errc::bad_catalog, family + "(" + params.key() + "): selected form has signature " +
                                sig.str() + ", expected (" + std::to_string(fam.dim - 1) + ",1,0)");
  return inst;
}

std::vector<GroupInstance> Catalog::enumerate_candidates(const std::string& family,
                                                         const Params& params) const {
  const FamilySpec& fam = this->family(family);
  if (fam.metadata_only)
    fail(errc::metadata_only_family,
         family + " is a metadata-only family (no matrix model is shipped)");
  const ParamRow* row = fam.find_row(params);
  if (!row) fail(errc::disallowed_params, family + " has no parameters (" + params.key() + ")");
  const auto& branches = row->branches.empty() ? fam.branches : row->branches;
  std::vector<GroupInstance> out;
  if (branches.empty()) {
    BranchSpec b;
    b.name = "principal";
    out.push_back(build_instance(fam, *row, b));
  } else {
    for (const auto& b : branches) out.push_back(build_instance(fam, *row, b));
  }
  return out;
}

GroupInstance Catalog::select_lattice_candidate(std::vector<GroupInstance> candidates) const {
  if (candidates.empty()) fail(errc::no_candidate, "no candidates supplied");
  const FamilySpec& fam = *candidates[0].spec;
  const unsigned n = fam.dim - 1;
  const ParamRow* row = fam.find_row(candidates[0].params);

  std::vector<GroupInstance> alive;
  for (auto& c : candidates) {
    Signature s = c.hermitian().signature();
    if (s.pos == n && s.neg == 1 && s.zero == 0) alive.push_back(std::move(c));
  }
  if (alive.empty()) fail(errc::no_candidate, "no candidate has hyperbolic signature");

  if (alive.size() > 1) {
    std::vector<GroupInstance> filtered;
    for (auto& c : alive) {
      bool keep = true;
      if (fam.name == "G29" && c.params.p == std::vector<unsigned>{4}) {
        // the subgroup dropping the first generator must act on a geodesic
        // complex 2-plane: lower-right 3x3 block of signature (2,1)
        keep = c.hermitian().subform({1, 2, 3}).signature() == Signature{2, 1, 0};
      } else if (fam.name == "G29" && c.params.p == std::vector<unsigned>{3}) {
        // reject the branch whose R2 R3 R4 is elliptic of infinite order
        MatC w = c.gens[1].matrix * c.gens[2].matrix * c.gens[3].matrix;
        ElementClass cls = classify_element(w, c.hermitian());
        keep = !cls.is(IsometryType::elliptic_infinite);
      } else if (fam.name == "G31" && c.params.p == std::vector<unsigned>{5}) {
        // a cocompact lattice admits no parabolic: reject the branch whose
        // three-mirror subgroup fixes an ideal point
        bool degenerate_triple = c.hermitian().subform({0, 1, 3}).signature().zero > 0;
        if (degenerate_triple && row && row->cocompact) {
          MatC w = c.gens[0].matrix * c.gens[1].matrix * c.gens[3].matrix;
          ElementClass cls = classify_element(w, c.hermitian());
          if (cls.is(IsometryType::parabolic)) keep = false;
        }
      } else if (fam.name == "G34") {
        keep = c.hermitian().subform({0, 1, 2, 3, 4}).signature() == Signature{4, 1, 0};
      } else if (fam.name == "G30") {
        // the catalog pins the golden-ratio branch with positive embedding;
        // at p=5 both signs give hyperbolic signature
        keep = c.env.at("phi").real_sign() > 0;
      }
      if (keep) filtered.push_back(std::move(c));
    }
    alive = std::move(filtered);
  }

  if (alive.empty()) fail(errc::no_candidate, "selection battery rejected every candidate");
  if (alive.size() > 1)
    fail(errc::ambiguous_selection, "more than one candidate survives the selection battery");
  return std::move(alive[0]);
}

const std::vector<StratumData>& Catalog::strata(const std::string& arrangement) const {
  auto it = strata_.find(arrangement);
  if (it == strata_.end())
    fail(errc::no_stratum_table, "no stratum table for arrangement " + arrangement);
  return it->second;
}

std::vector<StratumData> Catalog::cusp_strata(const std::string& arrangement,
                                              const Params& params) const {
  std::vector<StratumData> out;
  for (const auto& s : strata(arrangement))
    if (kappa(s, params) == 1) out.push_back(s);
  return out;
}

G28Beta derive_g28_beta(unsigned p, unsigned q) {
  unsigned l = std::lcm(p, q);
  auto f = CycField::get(l);
  CycElem z = f->subfield_root(p, 1);
  CycElem w = f->subfield_root(q, 1);
  CycElem num = z + w;
  if (num.is_zero()) fail(errc::degenerate_parameters, "z + w = 0");
  CycElem den = z + w - f->one() - z * w;
  G28Beta out{num / den, std::nullopt};
  if (out.beta_squared.is_rational()) {
    Rational c = out.beta_squared.rational_value();
    // beta^2 = cos(pi/p - pi/q) / (2 sin(pi/p) sin(pi/q)) > 0
    assert(c > 0);
    // beta = sqrt(num*den) / den over the integers
    Int n2 = c.get_num() * c.get_den();
    if (!n2.fits_uint_p()) fail(errc::degenerate_parameters, "beta^2 too large");
    CycElem root = sqrt_positive_integer(static_cast<unsigned>(n2.get_ui()));
    auto big = CycField::get(std::lcm(l, root.field()->conductor()));
    out.beta = root.lift_to(big) / big->from_rational(Rational(c.get_den()));
    out.beta_squared = out.beta_squared.lift_to(big);
  }
  return out;
}

Rational kappa(const StratumData& stratum, const Params& params) {
  if (stratum.orbit_counts.size() != params.p.size())
    fail(errc::dimension_mismatch, "stratum orbit count does not match parameter count");
  Rational sum(0);
  for (size_t i = 0; i < params.p.size(); ++i) {
    Rational kappa_mirror = Rational(1) - Rational(2, params.p[i]);
    kappa_mirror.canonicalize();
    sum += Rational(stratum.orbit_counts[i]) * kappa_mirror;
  }
  Rational out = sum / Rational(stratum.codim);
  out.canonicalize();
  return out;
}

} // namespace chl
