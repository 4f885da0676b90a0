#pragma once

#include <map>
#include <optional>

#include "chl/expr.hpp"
#include "chl/reflection.hpp"

namespace chl {

/// Parameter tuple (p) or (p, q); empty for the one parameter-free family.
struct Params {
  std::vector<unsigned> p;

  std::string key() const;
  friend bool operator==(const Params& a, const Params& b) { return a.p == b.p; }
};

struct BranchSpec {
  std::string name;
  std::vector<std::pair<std::string, std::string>> symbol_defs;
};

struct CuspSpec {
  std::vector<unsigned> generators; // 1-based indices into the instance generators
  std::vector<std::pair<std::string, std::string>> extra_symbols;
  std::vector<std::string> fixed_vector;                 // empty if already blocked
  std::vector<std::vector<std::string>> basis_change;    // empty if already blocked
  std::vector<std::vector<std::string>> adapted_form;
  unsigned expected_linear_part_order = 0;
};

struct ParamRow {
  Params params;
  unsigned conductor = 1;
  bool cocompact = false;
  bool expected_arithmetic = true;
  std::string expected_trace_field;
  std::vector<BranchSpec> branches; // may live here or at family level
  std::string selected_branch;
  std::optional<CuspSpec> cusp;
};

struct GeneratorSpec {
  enum class Kind { standard_polars, explicit_matrices, polar_list } kind;
  std::vector<std::string> multipliers;
  std::vector<std::vector<std::vector<std::string>>> matrices; // explicit kind
  std::vector<std::vector<std::string>> polars;                // polar_list kind
  struct Extra {
    std::vector<std::string> polar;
    std::string multiplier;
  };
  std::vector<Extra> extra; // additional non-standard generators
};

struct StratumData {
  std::string name;
  unsigned codim = 1;
  std::vector<unsigned> orbit_counts; // mirrors per orbit containing the stratum
};

struct FamilySpec {
  std::string name;
  unsigned dim = 0;
  unsigned mirror_orbits = 1;
  bool metadata_only = false;
  bool in_table3 = true;
  std::vector<std::pair<std::string, std::string>> symbol_defs;
  std::vector<std::pair<std::string, std::string>> post_branch_symbols;
  std::vector<std::vector<std::string>> form_template;
  GeneratorSpec generators;
  std::vector<std::string> relation_lines;
  std::vector<BranchSpec> branches;
  std::string selected_branch;
  std::vector<unsigned> integral_generators; // empty = all
  std::vector<Word> trace_witnesses;         // designated short witness words
  std::vector<ParamRow> rows;

  const ParamRow* find_row(const Params& params) const;
};

/// A catalog-instantiated family member: exact form, generators built from
/// the declarative data, relations, and the resolved branch symbols.
struct GroupInstance {
  const FamilySpec* spec = nullptr;
  Params params;
  std::string branch_name;
  CycField::Ptr field;
  std::optional<HermForm> form;
  std::vector<Reflection> gens;
  std::vector<Relation> relations;
  ExprEnv env;

  const HermForm& hermitian() const { return *form; }
  std::vector<MatC> generator_matrices() const;
  /// Generators whose entries must be (and are checked to be) algebraic
  /// integers: all of them unless the family exempts some.
  std::vector<unsigned> integral_generator_indices() const;
  bool generators_integral() const;
  std::string label() const;
};

struct Table3Row {
  std::string family;
  Params params;
  bool cocompact;
  bool arithmetic;
  std::string trace_field;
};

class Catalog {
public:
  /// Built-in data compiled into the library.
  static const Catalog& builtin();
  /// Parse a JSON document (same schema as the built-in data file).
  static Catalog from_json_text(const std::string& text);

  const std::vector<FamilySpec>& families() const { return families_; }
  const FamilySpec& family(const std::string& name) const; // errors: unknown_family
  const std::vector<std::string>& notes() const { return notes_; }

  /// Verdict rows in catalog order (lattice families only).
  std::vector<Table3Row> table3() const;

  /// Instantiates the selected branch; construction-checks the invariants
  /// (Hermitian template, generator/form compatibility, presentation).
  /// Errors: unknown_family, disallowed_params, metadata_only_family.
  GroupInstance instantiate(const std::string& family, const Params& params) const;

  /// All branch resolutions for the given parameters.
  std::vector<GroupInstance> enumerate_candidates(const std::string& family,
                                                  const Params& params) const;

  /// The documented per-family selection battery. Errors: no_candidate,
  /// ambiguous_selection.
  GroupInstance select_lattice_candidate(std::vector<GroupInstance> candidates) const;

  /// Stratum table for the named arrangement ("B4", "G29").
  /// Errors: no_stratum_table.
  const std::vector<StratumData>& strata(const std::string& arrangement) const;

  /// Strata of the arrangement with kappa exactly 1 at these parameters.
  std::vector<StratumData> cusp_strata(const std::string& arrangement,
                                       const Params& params) const;

private:
  std::vector<FamilySpec> families_;
  std::map<std::string, std::vector<StratumData>> strata_;
  std::vector<std::string> notes_;

  GroupInstance build_instance(const FamilySpec& fam, const ParamRow& row,
                               const BranchSpec& branch) const;
};

/// kappa_L = sum over mirror orbits of count_i * (1 - 2/p_i), divided by
/// the codimension; exact.
Rational kappa(const StratumData& stratum, const Params& params);

/// The braid-derived parameter of the two-orbit tridiagonal model:
/// beta^2 = (z+w)/(z+w-1-zw) in Q(zeta_lcm(p,q)), and the positive square
/// root itself whenever beta^2 is rational (so beta is cyclotomic).
/// Errors: degenerate_parameters when z + w = 0.
struct G28Beta {
  CycElem beta_squared;
  std::optional<CycElem> beta;
};
G28Beta derive_g28_beta(unsigned p, unsigned q);

} // namespace chl
