#pragma once

#include "chl/catalog.hpp"
#include "chl/closure.hpp"

namespace chl {

/// Hermitian form in cusp-adapted block shape: zero corners, unit
/// anti-corner entries, positive definite inner block K, zero off-blocks.
struct BlockedForm {
  HermForm full;
  HermForm k_block;

  unsigned dim() const { return full.dim(); }
  unsigned inner_dim() const { return full.dim() - 2; }
  const CycField::Ptr& field() const { return full.field(); }

  /// Errors: form_mismatch when the matrix does not have the block shape.
  static BlockedForm make(const HermForm& h);
};

/// Parabolic element fixing e_1, in decomposed form: a unitary linear part
/// B in U(K), horizontal translation w, real vertical part t. The matrix is
///   [ 1  -w*KB  -w*Kw/2 + it ]
///   [ 0    B        w        ]
///   [ 0    0        1        ]
struct HeisElem {
  MatC b;
  std::vector<CycElem> w;
  CycElem t;

  bool is_translation() const { return b.is_identity(); }
  bool is_vertical() const;
};

/// Errors: not_parabolic_shape, not_unipotent_corner, form_mismatch.
HeisElem parabolic_decompose(const MatC& m, const BlockedForm& f);
MatC heis_assemble(const HeisElem& u, const BlockedForm& f);

/// Group law in decomposed form; equals assemble-multiply-decompose.
HeisElem heis_mul(const HeisElem& a, const HeisElem& b, const BlockedForm& f);
HeisElem heis_inverse(const HeisElem& a, const BlockedForm& f);
/// Im of the Hermitian pairing: [U(w,t), U(w',t')] = U(0, 2 Im(w'* K w)).
CycElem heis_commutator_length(const std::vector<CycElem>& w, const std::vector<CycElem>& wp,
                               const BlockedForm& f);

/// Q U(w,t) Q^-1 for an isometry Q preserving the blocked shape (real
/// diagonal scale alpha): the horizontal part maps to alpha*C*w, the
/// vertical part scales by alpha^2. Errors: not_isometry_shape.
HeisElem conjugate_scaling(const MatC& q, const HeisElem& u, const BlockedForm& f);

struct Translation {
  Word word; // empty for derived commutator verticals
  std::vector<CycElem> w;
  CycElem t;
};

struct CuspProfile {
  const BlockedForm* form = nullptr;
  std::vector<Translation> translations;     // B = Id elements found
  std::vector<CycElem> horizontal_norms;     // distinct nonzero w*Kw, ascending
  std::vector<CycElem> vertical_lengths;     // distinct positive verticals found
  std::optional<CycElem> vertical_generator; // all verticals are Z-multiples
  unsigned linear_part_order = 0;
  unsigned horizontal_rank = 0; // rank over Q of the found w vectors
  /// Z-basis of the found horizontal lattice (rows = rational coordinates of
  /// w vectors over the field power basis), Hermite normal form.
  std::vector<std::vector<Int>> horizontal_basis;
  Int horizontal_denominator = 1;
  bool complete = false;

  CycElem min_horizontal_norm() const;
};

/// Enumerates words up to word_len in the cusp generators (with inverses),
/// collects translations and verticals (including commutator verticals),
/// and the finite closure of the linear parts.
/// Errors: not_common_fixed_point when a generator does not fix e_1.
CuspProfile translation_lattice(const std::vector<MatC>& gens, const BlockedForm& f,
                                unsigned word_len = 6, unsigned expected_linear_order = 0);

/// Row-style Hermite normal form of an integer matrix (nonzero rows only);
/// used for horizontal-lattice comparison.
std::vector<std::vector<Int>> hermite_normal_form(std::vector<std::vector<Int>> rows);

struct IncommResult {
  bool distinguished = false;
  CycElem witness_ratio;
  std::string note;
};

/// The one-scalar rationality obstruction: compares
/// rho = vertical_generator / min horizontal norm across the two profiles;
/// an irrational ratio certifies incommensurability of the cusps.
/// Errors: incomplete_profile.
IncommResult incommensurable_cusps(const CuspProfile& a, const CuspProfile& b);

/// Blocked coordinates and generator matrices for a catalog cusp: applies
/// the recorded change of basis (verified against the recorded adapted form)
/// or uses the instance coordinates when already blocked.
struct CuspSetup {
  BlockedForm form;
  std::vector<MatC> generators;
  std::optional<MatC> basis_change;
};

CuspSetup cusp_setup(const GroupInstance& inst, const CuspSpec& spec);

} // namespace chl
