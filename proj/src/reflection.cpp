#include "chl/reflection.hpp"

#include <cassert>
#include <sstream>

namespace chl {

Reflection Reflection::build(const HermForm& h, const std::vector<CycElem>& v, const CycElem& z) {
  const auto& f = h.field();
  if (v.size() != h.dim()) fail(errc::dimension_mismatch, "polar vector has wrong length");
  CycElem vv = h.norm(v);
  if (vv.is_zero()) fail(errc::isotropic_polar_vector, "polar vector is isotropic");
  if ((z * z.conj()) != f->one()) fail(errc::non_unit_multiplier, "multiplier must satisfy z*conj(z)=1");

  // row covector v* H
  std::vector<CycElem> vstar_h(h.dim(), f->zero());
  for (unsigned j = 0; j < h.dim(); ++j)
    for (unsigned i = 0; i < h.dim(); ++i)
      if (!v[i].is_zero() && !h.mat().at(i, j).is_zero())
        vstar_h[j] += v[i].conj() * h.mat().at(i, j);

  CycElem scale = (z - f->one()) / vv;
  MatC m = MatC::identity(f, h.dim());
  for (unsigned i = 0; i < h.dim(); ++i) {
    if (v[i].is_zero()) continue;
    CycElem row_scale = scale * v[i];
    for (unsigned j = 0; j < h.dim(); ++j)
      if (!vstar_h[j].is_zero()) m.at(i, j) += row_scale * vstar_h[j];
  }
  assert(m.star() * h.mat() * m == h.mat());
  return Reflection{std::move(m), v, z};
}

namespace {

MatC alternating_product(const MatC& a, const MatC& b, unsigned k) {
  MatC acc = MatC::identity(a.field(), a.rows());
  for (unsigned i = 0; i < k; ++i) acc = acc * (i % 2 == 0 ? a : b);
  return acc;
}

} // namespace

bool braid_holds(const MatC& a, const MatC& b, unsigned k) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !a.is_square())
    fail(errc::dimension_mismatch, "braid check needs equal square matrices");
  if (k < 1) fail(errc::malformed_word, "braid length must be >= 1");
  return alternating_product(a, b, k) == alternating_product(b, a, k);
}

std::optional<unsigned> braid_length(const MatC& a, const MatC& b, unsigned k_max) {
  if (k_max < 2) fail(errc::malformed_word, "k_max must be >= 2");
  MatC pa = a, pb = b; // alternating products with k factors
  for (unsigned k = 2; k <= k_max; ++k) {
    pa = pa * (k % 2 == 1 ? a : b);
    pb = pb * (k % 2 == 1 ? b : a);
    if (pa == pb) return k;
  }
  return std::nullopt;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    try {
      size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size() || v == 0) fail(errc::malformed_word, "bad generator index: " + tok);
      w.push_back(v);
    } catch (const std::invalid_argument&) {
      fail(errc::malformed_word, "bad generator index: " + tok);
    } catch (const std::out_of_range&) {
      fail(errc::malformed_word, "generator index out of range: " + tok);
    }
  }
  if (w.empty()) fail(errc::malformed_word, "empty word");
  return w;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  return s;
}

MatC eval_word(const std::vector<MatC>& gens, const Word& w) {
  if (gens.empty()) fail(errc::malformed_word, "no generators");
  MatC acc = MatC::identity(gens[0].field(), gens[0].rows());
  for (int g : w) {
    unsigned idx = static_cast<unsigned>(g > 0 ? g : -g);
    if (idx == 0 || idx > gens.size())
      fail(errc::malformed_word, "generator index out of range: " + std::to_string(g));
    acc = acc * (g > 0 ? gens[idx - 1] : gens[idx - 1].inverse());
  }
  return acc;
}

std::string relation_to_string(const Relation& r) {
  if (const auto* b = std::get_if<BraidRel>(&r)) {
    if (b->a.size() == 1 && b->b.size() == 1 && b->a[0] > 0 && b->b[0] > 0)
      return "br " + std::to_string(b->k) + ": " + word_to_string(b->a) + " " +
             word_to_string(b->b);
    return "br " + std::to_string(b->k) + ": " + word_to_string(b->a) + " | " +
           word_to_string(b->b);
  }
  if (const auto* p = std::get_if<PowerRel>(&r))
    return "pow " + std::to_string(p->m) + ": " + word_to_string(p->w);
  const auto& e = std::get<EqualRel>(r);
  return "eq: " + word_to_string(e.lhs) + " = " + word_to_string(e.rhs);
}

Relation parse_relation(const std::string& line) {
  auto colon = line.find(':');
  if (colon == std::string::npos) fail(errc::malformed_word, "missing ':' in relation: " + line);
  std::string head = line.substr(0, colon);
  std::string body = line.substr(colon + 1);
  std::istringstream hs(head);
  std::string kind;
  hs >> kind;
  if (kind == "br") {
    unsigned k = 0;
    if (!(hs >> k) || k < 1) fail(errc::malformed_word, "bad braid length: " + line);
    auto bar = body.find('|');
    if (bar != std::string::npos)
      return BraidRel{parse_word(body.substr(0, bar)), parse_word(body.substr(bar + 1)), k};
    Word both = parse_word(body);
    if (both.size() != 2) fail(errc::malformed_word, "braid relation needs two operands: " + line);
    return BraidRel{{both[0]}, {both[1]}, k};
  }
  if (kind == "pow") {
    unsigned m = 0;
    if (!(hs >> m) || m < 1) fail(errc::malformed_word, "bad power: " + line);
    return PowerRel{parse_word(body), m};
  }
  if (kind == "eq") {
    auto eq = body.find('=');
    if (eq == std::string::npos) fail(errc::malformed_word, "missing '=' in relation: " + line);
    return EqualRel{parse_word(body.substr(0, eq)), parse_word(body.substr(eq + 1))};
  }
  fail(errc::malformed_word, "unknown relation kind: " + line);
}

std::vector<Relation> parse_presentation(const std::string& text) {
  std::vector<Relation> rels;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rels.push_back(parse_relation(line));
  }
  return rels;
}

PresentationReport verify_presentation(const std::vector<MatC>& gens,
                                       const std::vector<Relation>& relations) {
  PresentationReport report;
  report.checks.resize(relations.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (long i = 0; i < static_cast<long>(relations.size()); ++i) {
    const Relation& r = relations[i];
    RelationCheck check;
    check.relation = r;
    MatC lhs, rhs;
    if (const auto* b = std::get_if<BraidRel>(&r)) {
      MatC wa = eval_word(gens, b->a), wb = eval_word(gens, b->b);
      lhs = alternating_product(wa, wb, b->k);
      rhs = alternating_product(wb, wa, b->k);
    } else if (const auto* p = std::get_if<PowerRel>(&r)) {
      lhs = eval_word(gens, p->w).pow(static_cast<long>(p->m));
      rhs = MatC::identity(gens[0].field(), gens[0].rows());
    } else {
      const auto& e = std::get<EqualRel>(r);
      lhs = eval_word(gens, e.lhs);
      rhs = eval_word(gens, e.rhs);
    }
    check.pass = (lhs == rhs);
    if (!check.pass) check.diff = lhs - rhs;
    report.checks[i] = std::move(check);
  }

  for (size_t i = 0; i < report.checks.size(); ++i)
    if (!report.checks[i].pass) {
      report.all_pass = false;
      if (!report.first_failure) report.first_failure = i;
    }
  return report;
}

} // namespace chl
