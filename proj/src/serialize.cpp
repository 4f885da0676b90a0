#include "chl/serialize.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace chl {

using nlohmann::ordered_json;

namespace {

ordered_json elem_coeffs(const CycElem& x) {
  ordered_json arr = ordered_json::array();
  for (const auto& q : x.coeffs()) arr.push_back(rat_to_string(q));
  return arr;
}

CycElem elem_from(const ordered_json& j, const CycField::Ptr& f) {
  std::vector<Rational> c;
  for (const auto& s : j) {
    auto q = rat_from_string(s.get<std::string>());
    if (!q) fail(errc::bad_catalog, "bad rational string: " + s.get<std::string>());
    c.push_back(*q);
  }
  return f->from_coeffs(std::move(c));
}

ordered_json elem_json(const CycElem& x) {
  ordered_json j;
  j["field"] = x.field()->conductor();
  j["coeffs"] = elem_coeffs(x);
  return j;
}

ordered_json matrix_json(const MatC& m) {
  ordered_json j;
  j["field"] = m.field()->conductor();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ordered_json entries = ordered_json::array();
  for (unsigned i = 0; i < m.rows(); ++i)
    for (unsigned k = 0; k < m.cols(); ++k) entries.push_back(elem_coeffs(m.at(i, k)));
  j["entries"] = std::move(entries);
  return j;
}

ordered_json signature_json(const Signature& s) { return ordered_json::array({s.pos, s.neg, s.zero}); }

} // namespace

std::string elem_to_json(const CycElem& x) { return elem_json(x).dump(); }

CycElem elem_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  auto f = CycField::get(j.at("field").get<unsigned>());
  return elem_from(j.at("coeffs"), f);
}

std::string matrix_to_json(const MatC& m) { return matrix_json(m).dump(); }

MatC matrix_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  auto f = CycField::get(j.at("field").get<unsigned>());
  unsigned rows = j.at("rows").get<unsigned>();
  unsigned cols = j.at("cols").get<unsigned>();
  const auto& entries = j.at("entries");
  if (entries.size() != static_cast<size_t>(rows) * cols)
    fail(errc::dimension_mismatch, "entry count does not match dimensions");
  MatC m(f, rows, cols);
  size_t idx = 0;
  for (unsigned i = 0; i < rows; ++i)
    for (unsigned k = 0; k < cols; ++k) m.at(i, k) = elem_from(entries[idx++], f);
  return m;
}

std::string signature_to_json(const Signature& s) { return signature_json(s).dump(); }

std::string approx_string(const CycElem& x, mpfr_prec_t precision_bits) {
  CInterval box = x.embed(precision_bits);
  double re = box.re().mid_d(), im = box.im().mid_d();
  std::ostringstream os;
  os.precision(15);
  os << re;
  if (std::abs(im) > 1e-25) {
    os << (im < 0 ? " - " : " + ");
    os.precision(15);
    os << std::abs(im) << "i";
  }
  return os.str();
}

std::string verdict_to_json(const GroupInstance& g, const ArithmeticityVerdict& v) {
  ordered_json j;
  j["family"] = g.spec->name;
  ordered_json params = ordered_json::array();
  for (unsigned p : g.params.p) params.push_back(p);
  j["params"] = std::move(params);
  j["branch"] = g.branch_name;
  j["field"] = g.field->conductor();
  j["embedding"] = g.field->embedding_k();
  j["trace_field"] = v.trace_field.descriptor;
  j["trace_field_fixing_exponents"] = v.trace_field.fixing_exponents;
  j["arithmetic"] = v.arithmetic;
  ordered_json sigs = ordered_json::object();
  for (const auto& [k, s] : v.conjugate_signatures) sigs[std::to_string(k)] = signature_json(s);
  j["conjugate_signatures"] = std::move(sigs);
  if (v.nonarithmeticity_witness) j["nonarithmeticity_witness"] = *v.nonarithmeticity_witness;
  ordered_json wit = ordered_json::array();
  for (const auto& [word, value] : v.trace_field.witnesses) {
    ordered_json e;
    e["word"] = word_to_string(word);
    e["trace_norm"] = elem_coeffs(value);
    e["approx"] = approx_string(value);
    wit.push_back(std::move(e));
  }
  j["witnesses"] = std::move(wit);
  return j.dump(2);
}

std::string cusp_profile_to_json(const CuspProfile& p) {
  ordered_json j;
  j["linear_part_order"] = p.linear_part_order;
  if (p.vertical_generator) {
    j["vertical_generator"] = elem_coeffs(*p.vertical_generator);
    j["vertical_generator_approx"] = approx_string(*p.vertical_generator);
  }
  ordered_json norms = ordered_json::array();
  for (const auto& n : p.horizontal_norms) {
    ordered_json e;
    e["coeffs"] = elem_coeffs(n);
    e["approx"] = approx_string(n);
    norms.push_back(std::move(e));
  }
  j["horizontal_norms"] = std::move(norms);
  j["horizontal_rank"] = p.horizontal_rank;
  j["complete"] = p.complete;
  ordered_json tr = ordered_json::array();
  for (const auto& t : p.translations) {
    ordered_json e;
    e["word"] = word_to_string(t.word);
    ordered_json w = ordered_json::array();
    for (const auto& x : t.w) w.push_back(elem_coeffs(x));
    e["w"] = std::move(w);
    e["t"] = elem_coeffs(t.t);
    e["t_approx"] = approx_string(t.t);
    tr.push_back(std::move(e));
  }
  j["translations"] = std::move(tr);
  return j.dump(2);
}

std::string instance_to_json(const GroupInstance& g) {
  ordered_json j;
  j["family"] = g.spec->name;
  ordered_json params = ordered_json::array();
  for (unsigned p : g.params.p) params.push_back(p);
  j["params"] = std::move(params);
  j["branch"] = g.branch_name;
  j["field"] = g.field->conductor();
  j["embedding"] = g.field->embedding_k();
  j["dim"] = g.spec->dim;
  Signature s = g.hermitian().signature();
  j["signature"] = signature_json(s);
  j["generators_integral"] = g.generators_integral();
  j["form"] = ordered_json::parse(matrix_to_json(g.hermitian().mat()));
  ordered_json gens = ordered_json::array();
  for (const auto& r : g.gens) {
    ordered_json e;
    e["matrix"] = ordered_json::parse(matrix_to_json(r.matrix));
    ordered_json polar = ordered_json::array();
    for (const auto& x : r.polar) polar.push_back(elem_coeffs(x));
    e["polar"] = std::move(polar);
    e["multiplier"] = elem_coeffs(r.multiplier);
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  return j.dump(2);
}

} // namespace chl
