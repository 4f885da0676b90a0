#include "chl/heisenberg.hpp"

#include <algorithm>
#include <cassert>

#include "chl/wordgen.hpp"

namespace chl {

namespace {

CycElem imag_unit(const CycField::Ptr& f) {
  if (f->conductor() % 4 != 0)
    fail(errc::incompatible_fields, "cusp computations need i in the field (4 | conductor)");
  return f->subfield_root(4, 1);
}

// (x - conj x) / (2i), the imaginary part as a real field element
CycElem imag_part(const CycElem& x) {
  const auto& f = x.field();
  return (x - x.conj()) / (imag_unit(f) * f->from_rational(Rational(2)));
}

std::vector<CycElem> mat_vec(const MatC& m, const std::vector<CycElem>& v) { return m.apply(v); }

CycElem row_covector_dot(const std::vector<CycElem>& row, const std::vector<CycElem>& v) {
  CycElem acc = row[0].field()->zero();
  for (size_t i = 0; i < row.size(); ++i) acc += row[i] * v[i];
  return acc;
}

// w* K v
CycElem k_pairing(const BlockedForm& f, const std::vector<CycElem>& v,
                  const std::vector<CycElem>& w) {
  return f.k_block.pairing(v, w);
}

} // namespace

bool HeisElem::is_vertical() const {
  if (!is_translation()) return false;
  for (const auto& x : w)
    if (!x.is_zero()) return false;
  return true;
}

BlockedForm BlockedForm::make(const HermForm& h) {
  const unsigned d = h.dim();
  if (d < 3) fail(errc::form_mismatch, "blocked form needs dimension >= 3");
  const auto& f = h.field();
  const MatC& m = h.mat();
  auto expect = [&](unsigned i, unsigned j, bool zero) {
    bool is = m.at(i, j).is_zero();
    if (is != zero)
      fail(errc::form_mismatch, "blocked form violated at entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
  };
  expect(0, 0, true);
  expect(d - 1, d - 1, true);
  if (!m.at(0, d - 1).is_one() || !m.at(d - 1, 0).is_one())
    fail(errc::form_mismatch, "blocked form needs unit anti-corner entries");
  for (unsigned j = 1; j + 1 < d; ++j) {
    expect(0, j, true);
    expect(j, 0, true);
    expect(d - 1, j, true);
    expect(j, d - 1, true);
  }
  std::vector<unsigned> inner;
  for (unsigned j = 1; j + 1 < d; ++j) inner.push_back(j);
  HermForm k = h.subform(inner);
  Signature sig = k.signature();
  if (!(sig.neg == 0 && sig.zero == 0))
    fail(errc::form_mismatch, "inner block must be positive definite");
  (void)f;
  return BlockedForm{h, k};
}

HeisElem parabolic_decompose(const MatC& m, const BlockedForm& f) {
  const unsigned d = f.dim();
  const unsigned k = f.inner_dim();
  const auto& field = f.field();
  if (!m.is_square() || m.rows() != d) fail(errc::dimension_mismatch, "parabolic_decompose");
  if (m.star() * f.full.mat() * m != f.full.mat())
    fail(errc::form_mismatch, "matrix does not preserve the blocked form");
  // shape: first column e_1, last row e_d
  for (unsigned i = 1; i < d; ++i)
    if (!m.at(i, 0).is_zero()) fail(errc::not_parabolic_shape, "first column is not fixed");
  for (unsigned j = 0; j + 1 < d; ++j)
    if (!m.at(d - 1, j).is_zero()) fail(errc::not_parabolic_shape, "last row is not (0,...,0,1)");
  if (!m.at(d - 1, d - 1).is_one() || !m.at(0, 0).is_one()) {
    // an isometry of this shape with a non-unit corner is not unipotent
    if (!m.at(0, 0).is_zero() && m.at(0, 0) == m.at(d - 1, d - 1).inverse() &&
        !m.at(0, 0).is_one())
      fail(errc::not_unipotent_corner, "corner scale is not 1");
    fail(errc::not_parabolic_shape, "corner entries are not 1");
  }

  HeisElem u;
  u.b = MatC(field, k, k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) u.b.at(i, j) = m.at(1 + i, 1 + j);
  if (u.b.star() * f.k_block.mat() * u.b != f.k_block.mat())
    fail(errc::not_parabolic_shape, "middle block is not K-unitary");
  u.w.assign(k, field->zero());
  for (unsigned i = 0; i < k; ++i) u.w[i] = m.at(1 + i, d - 1);
  // corner = -w*Kw/2 + i t
  CycElem corner = m.at(0, d - 1);
  CycElem t_times_i =
      corner + k_pairing(f, u.w, u.w) / field->from_rational(Rational(2));
  u.t = t_times_i / imag_unit(field);
  if (!u.t.is_real()) fail(errc::not_parabolic_shape, "vertical part is not real");
  assert(heis_assemble(u, f) == m);
  return u;
}

MatC heis_assemble(const HeisElem& u, const BlockedForm& f) {
  const unsigned d = f.dim();
  const unsigned k = f.inner_dim();
  const auto& field = f.field();
  MatC m = MatC::identity(field, d);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) m.at(1 + i, 1 + j) = u.b.at(i, j);
  for (unsigned i = 0; i < k; ++i) m.at(1 + i, d - 1) = u.w[i];
  // top middle: -w* K B
  std::vector<CycElem> wK(k, field->zero());
  for (unsigned j = 0; j < k; ++j)
    for (unsigned i = 0; i < k; ++i) wK[j] += u.w[i].conj() * f.k_block.mat().at(i, j);
  for (unsigned j = 0; j < k; ++j) {
    CycElem acc = field->zero();
    for (unsigned i = 0; i < k; ++i) acc += wK[i] * u.b.at(i, j);
    m.at(0, 1 + j) = -acc;
  }
  m.at(0, d - 1) = -k_pairing(f, u.w, u.w) / field->from_rational(Rational(2)) +
                   imag_unit(field) * u.t;
  return m;
}

HeisElem heis_mul(const HeisElem& a, const HeisElem& b, const BlockedForm& f) {
  if (a.w.size() != b.w.size() || a.w.size() != f.inner_dim())
    fail(errc::form_mismatch, "heis_mul operands do not match the form");
  HeisElem c;
  c.b = a.b * b.b;
  std::vector<CycElem> bw = mat_vec(a.b, b.w);
  c.w.resize(f.inner_dim(), f.field()->zero());
  for (unsigned i = 0; i < f.inner_dim(); ++i) c.w[i] = bw[i] + a.w[i];
  // t + t' + Im( (w')* B* K w ) with the pairing linear in its first slot
  CycElem cross = k_pairing(f, a.w, bw); // (Bw')* K w
  c.t = a.t + b.t + imag_part(cross);
  assert(heis_assemble(c, f) == heis_assemble(a, f) * heis_assemble(b, f));
  return c;
}

HeisElem heis_inverse(const HeisElem& a, const BlockedForm& f) {
  HeisElem inv;
  inv.b = a.b.inverse();
  std::vector<CycElem> biw = mat_vec(inv.b, a.w);
  inv.w.resize(a.w.size(), f.field()->zero());
  for (size_t i = 0; i < a.w.size(); ++i) inv.w[i] = -biw[i];
  inv.t = -a.t;
  return inv;
}

CycElem heis_commutator_length(const std::vector<CycElem>& w, const std::vector<CycElem>& wp,
                               const BlockedForm& f) {
  // [U(w,t), U(w',t')] = U(0, 2 Im(w'^* K w))
  CycElem pairing = k_pairing(f, w, wp); // (w')* K w
  return f.field()->from_rational(Rational(2)) * imag_part(pairing);
}

HeisElem conjugate_scaling(const MatC& q, const HeisElem& u, const BlockedForm& f) {
  const unsigned d = f.dim();
  if (!q.is_square() || q.rows() != d) fail(errc::dimension_mismatch, "conjugate_scaling");
  if (q.star() * f.full.mat() * q != f.full.mat())
    fail(errc::not_isometry_shape, "Q does not preserve the blocked form");
  for (unsigned i = 1; i < d; ++i)
    if (!q.at(i, 0).is_zero()) fail(errc::not_isometry_shape, "Q does not stabilize e_1");
  for (unsigned j = 1; j + 1 < d; ++j)
    if (!q.at(d - 1, j).is_zero())
      fail(errc::not_isometry_shape, "Q is not block-triangular");
  if (!q.at(0, 0).is_real() || q.at(0, 0).is_zero())
    fail(errc::not_isometry_shape, "corner scale must be real and nonzero");
  MatC m = q * heis_assemble(u, f) * q.inverse();
  return parabolic_decompose(m, f);
}

namespace {

// rational coordinates of a w vector over the field power basis
std::vector<Rational> flatten(const std::vector<CycElem>& w) {
  std::vector<Rational> out;
  for (const auto& x : w)
    for (const auto& q : x.coeffs()) out.push_back(q);
  return out;
}

unsigned rational_rank(std::vector<std::vector<Rational>> rows) {
  unsigned rank = 0;
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  size_t row_count = rows.size();
  for (size_t col = 0; col < cols && rank < row_count; ++col) {
    size_t piv = rank;
    while (piv < row_count && rows[piv][col] == 0) ++piv;
    if (piv == row_count) continue;
    std::swap(rows[piv], rows[rank]);
    Rational d = rows[rank][col];
    for (size_t j = col; j < cols; ++j) rows[rank][j] /= d;
    for (size_t i = 0; i < row_count; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      Rational c = rows[i][col];
      for (size_t j = col; j < cols; ++j) rows[i][j] -= c * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

} // namespace

std::vector<std::vector<Int>> hermite_normal_form(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return rows;
  const size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t col = 0; col < cols; ++col) {
    // reduce column col below row r by gcd steps
    for (;;) {
      size_t piv = rows.size();
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (piv == rows.size() ||
                                  cmp(abs(rows[i][col]), abs(rows[piv][col])) < 0))
          piv = i;
      if (piv == rows.size()) break;
      std::swap(rows[piv], rows[r]);
      bool all_zero = true;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Int q = rows[i][col] / rows[r][col]; // truncated division is fine here
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][col] != 0) all_zero = false;
      }
      if (all_zero) break;
    }
    if (r < rows.size() && rows[r][col] != 0) {
      if (rows[r][col] < 0)
        for (size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
      // reduce the rows above
      for (size_t i = 0; i < r; ++i) {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[r][col].get_mpz_t());
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

namespace {

int real_compare(const CycElem& a, const CycElem& b) { return (a - b).real_sign(); }

} // namespace

CycElem CuspProfile::min_horizontal_norm() const {
  if (horizontal_norms.empty()) fail(errc::incomplete_profile, "no horizontal norms");
  return horizontal_norms.front();
}

CuspProfile translation_lattice(const std::vector<MatC>& gens, const BlockedForm& f,
                                unsigned word_len, unsigned expected_linear_order) {
  CuspProfile profile;
  profile.form = &f;
  const auto& field = f.field();
  const unsigned k = f.inner_dim();

  std::vector<HeisElem> gen_parts;
  for (const auto& g : gens) {
    try {
      gen_parts.push_back(parabolic_decompose(g, f));
    } catch (const error& e) {
      fail(errc::not_common_fixed_point,
           std::string("generator does not stabilize the ideal point: ") + e.what());
    }
  }

  // linear part: finite closure of the B blocks
  std::vector<MatC> b_parts;
  for (const auto& g : gen_parts) b_parts.push_back(g.b);
  FiniteGroupClosure linear = FiniteGroupClosure::build(
      b_parts, expected_linear_order ? 4 * expected_linear_order : 10000);
  profile.linear_part_order = linear.order();

  // word sweep
  std::map<std::string, Translation> translations;
  std::map<std::string, CycElem> verticals; // |t| key -> positive t
  auto note_vertical = [&](const CycElem& t) {
    if (t.is_zero()) return;
    CycElem pos = t.real_sign() > 0 ? t : -t;
    verticals.emplace(pos.canonical_key(), pos);
  };

  std::vector<words::WordMat> sweep = words::enumerate(gens, word_len, /*with_inverses=*/true);
  for (const auto& wm : sweep) {
    HeisElem u = parabolic_decompose(wm.mat, f);
    if (!u.is_translation()) continue;
    if (u.is_vertical()) {
      note_vertical(u.t);
      continue;
    }
    std::string key;
    for (const auto& x : u.w) key += x.canonical_key();
    if (!translations.count(key)) translations[key] = Translation{wm.word, u.w, u.t};
  }

  for (auto& [key, tr] : translations) profile.translations.push_back(tr);

  // verticals from commutators of found translations
  for (size_t i = 0; i < profile.translations.size(); ++i)
    for (size_t j = i + 1; j < profile.translations.size(); ++j)
      note_vertical(
          heis_commutator_length(profile.translations[i].w, profile.translations[j].w, f));

  for (auto& [key, t] : verticals) profile.vertical_lengths.push_back(t);
  std::sort(profile.vertical_lengths.begin(), profile.vertical_lengths.end(),
            [](const CycElem& a, const CycElem& b) { return real_compare(a, b) < 0; });

  // vertical generator: gcd over Q of the found lengths relative to the first
  if (!profile.vertical_lengths.empty()) {
    CycElem base = profile.vertical_lengths.front();
    Rational acc(0);
    bool commensurable = true;
    for (const auto& t : profile.vertical_lengths) {
      CycElem ratio = t / base;
      if (!ratio.is_rational()) {
        commensurable = false;
        break;
      }
      Rational r = ratio.rational_value();
      // gcd of rationals: gcd of numerators / lcm of denominators
      if (acc == 0)
        acc = r;
      else {
        Int num = gcd(acc.get_num(), r.get_num());
        Int den = lcm(acc.get_den(), r.get_den());
        acc = Rational(num) / Rational(den);
        acc.canonicalize();
      }
    }
    if (commensurable) profile.vertical_generator = base * field->from_rational(acc);
  }

  // horizontal norms (distinct, ascending)
  {
    std::map<std::string, CycElem> norms;
    for (const auto& tr : profile.translations) {
      CycElem norm = f.k_block.norm(tr.w);
      if (!norm.is_zero()) norms.emplace(norm.canonical_key(), norm);
    }
    for (auto& [key, v] : norms) profile.horizontal_norms.push_back(v);
    std::sort(profile.horizontal_norms.begin(), profile.horizontal_norms.end(),
              [](const CycElem& a, const CycElem& b) { return real_compare(a, b) < 0; });
  }

  // rank and Z-basis of the horizontal lattice
  {
    std::vector<std::vector<Rational>> rows;
    for (const auto& tr : profile.translations) rows.push_back(flatten(tr.w));
    profile.horizontal_rank = rational_rank(rows);

    Int den(1);
    for (const auto& row : rows)
      for (const auto& q : row) den = lcm(den, q.get_den());
    std::vector<std::vector<Int>> int_rows;
    for (const auto& row : rows) {
      std::vector<Int> r;
      for (const auto& q : row) r.push_back(q.get_num() * (den / q.get_den()));
      int_rows.push_back(std::move(r));
    }
    profile.horizontal_basis = hermite_normal_form(std::move(int_rows));
    profile.horizontal_denominator = den;
  }

  profile.complete = profile.horizontal_rank == 2 * k && profile.vertical_generator &&
                     (!expected_linear_order || profile.linear_part_order == expected_linear_order);
  (void)field;
  return profile;
}

IncommResult incommensurable_cusps(const CuspProfile& a, const CuspProfile& b) {
  if (!a.complete || !b.complete)
    fail(errc::incomplete_profile, "both cusp profiles must be complete");
  CycElem rho_a = *a.vertical_generator / a.min_horizontal_norm();
  CycElem rho_b = *b.vertical_generator / b.min_horizontal_norm();
  auto common = common_field(rho_a.field(), rho_b.field());
  CycElem ratio = rho_a.lift_to(common) / rho_b.lift_to(common);
  IncommResult res;
  res.witness_ratio = ratio;
  if (ratio.is_rational()) {
    res.distinguished = false;
    res.note = "vertical/horizontal scale ratio is rational; profiles not distinguished";
  } else {
    res.distinguished = true;
    res.note = "vertical/horizontal scale ratio is irrational";
  }
  return res;
}

CuspSetup cusp_setup(const GroupInstance& inst, const CuspSpec& spec) {
  const auto& field = inst.field;
  ExprEnv env = inst.env;
  for (const auto& [name, expr] : spec.extra_symbols) env[name] = eval_expr(expr, field, env);

  std::vector<MatC> raw;
  for (unsigned idx : spec.generators) {
    if (idx < 1 || idx > inst.gens.size()) fail(errc::bad_catalog, "cusp generator out of range");
    raw.push_back(inst.gens[idx - 1].matrix);
  }

  CuspSetup setup{BlockedForm{inst.hermitian(), inst.hermitian()}, {}, std::nullopt};
  if (spec.basis_change.empty()) {
    setup.form = BlockedForm::make(inst.hermitian());
    setup.generators = raw;
    return setup;
  }

  MatC q(field, inst.hermitian().dim(), inst.hermitian().dim());
  for (unsigned i = 0; i < q.rows(); ++i)
    for (unsigned j = 0; j < q.cols(); ++j)
      q.at(i, j) = eval_expr(spec.basis_change[i][j], field, env);
  MatC adapted(field, q.rows(), q.cols());
  for (unsigned i = 0; i < q.rows(); ++i)
    for (unsigned j = 0; j < q.cols(); ++j)
      adapted.at(i, j) = eval_expr(spec.adapted_form[i][j], field, env);
  if (q.star() * inst.hermitian().mat() * q != adapted)
    fail(errc::bad_catalog, "recorded basis change does not yield the recorded adapted form");

  if (!spec.fixed_vector.empty()) {
    std::vector<CycElem> v;
    for (const auto& e : spec.fixed_vector) v.push_back(eval_expr(e, field, env));
    if (!inst.hermitian().norm(v).is_zero())
      fail(errc::bad_catalog, "recorded cusp vector is not null");
    for (const auto& m : raw) {
      std::vector<CycElem> image = m.apply(v);
      for (unsigned i = 0; i < image.size(); ++i)
        if (image[i] != v[i])
          fail(errc::not_common_fixed_point, "cusp generator does not fix the recorded vector");
    }
  }

  setup.form = BlockedForm::make(HermForm(adapted));
  MatC qi = q.inverse();
  for (const auto& m : raw) setup.generators.push_back(qi * m * q);
  setup.basis_change = q;
  return setup;
}

} // namespace chl
