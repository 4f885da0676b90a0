#include "chl/closure.hpp"
#include "chl/heisenberg.hpp"
#include "doctest.h"

using namespace chl;

namespace {

// linear parts of the two catalog cusps
std::vector<MatC> cusp_linear_parts(const char* family, const Params& params) {
  const Catalog& cat = Catalog::builtin();
  GroupInstance g = cat.instantiate(family, params);
  const FamilySpec& fam = cat.family(family);
  const ParamRow* row = fam.find_row(params);
  REQUIRE(row);
  REQUIRE(row->cusp);
  CuspSetup setup = cusp_setup(g, *row->cusp);
  std::vector<MatC> parts;
  for (const auto& m : setup.generators) parts.push_back(parabolic_decompose(m, setup.form).b);
  return parts;
}

} // namespace

TEST_CASE("trivial closures") {
  auto f = CycField::get(4);
  FiniteGroupClosure triv = FiniteGroupClosure::build({MatC::identity(f, 2)});
  CHECK(triv.order() == 1);

  // cyclic group of order 4
  MatC i4(f, 1, 1);
  i4.at(0, 0) = f->zeta_pow(1);
  FiniteGroupClosure c4 = FiniteGroupClosure::build({i4});
  CHECK(c4.order() == 4);
  CHECK(c4.center().order() == 4); // cyclic: the whole group
}

TEST_CASE("order bound is enforced") {
  auto f = CycField::get(4);
  MatC shear = MatC::identity(f, 2);
  shear.at(0, 1) = f->one(); // infinite order
  CHECK_THROWS_AS(FiniteGroupClosure::build({shear}, 500), error);
}

TEST_CASE("cusp linear parts close to the documented finite groups") {
  auto dm = cusp_linear_parts("B4_34_DM", Params{});
  FiniteGroupClosure g96 = FiniteGroupClosure::build(dm); // B2, B3, B4
  CHECK(g96.order() == 96);
  CHECK(g96.center().order() == 4);

  // B4 lies in the closure of B2 and B3, with the documented witness identity
  FiniteGroupClosure g23 = FiniteGroupClosure::build({dm[0], dm[1]});
  CHECK(g23.order() == 96);
  auto witness = g23.member(dm[2]);
  REQUIRE(witness.has_value());
  CHECK(eval_word({dm[0], dm[1]}, *witness) == dm[2]);
  // B4 = B3 B2 B3 B2 B3 exactly
  CHECK(dm[2] == dm[1] * dm[0] * dm[1] * dm[0] * dm[1]);

  auto g29 = cusp_linear_parts("G29", Params{{3}}); // B1, B2, B4
  FiniteGroupClosure g72 = FiniteGroupClosure::build(g29);
  CHECK(g72.order() == 72);

  // B1 lies in the closure of B2 and B4; the documented witness verifies
  FiniteGroupClosure g24 = FiniteGroupClosure::build({g29[1], g29[2]});
  CHECK(g24.order() == 72);
  CHECK(g24.member(g29[0]).has_value());
  MatC b2 = g29[1], b4 = g29[2];
  CHECK(g29[0] == b2 * (b4.inverse() * b2 * b4 * b2.inverse())); // B1 = B2 [B4^-1, B2]

  // order 3 reflections braiding with length 4
  CHECK(b2.pow(3).is_identity());
  CHECK(b4.pow(3).is_identity());
  CHECK(braid_length(b2, b4, 8) == 4u);

  // center order divides group order; element orders divide group order
  FiniteGroupClosure z = g72.center();
  CHECK(72 % z.order() == 0);
  for (const auto& m : z.elements()) CHECK(m * g29[0] == g29[0] * m);
}

TEST_CASE("closure is generator-order independent") {
  auto parts = cusp_linear_parts("B4_34_DM", Params{});
  FiniteGroupClosure a = FiniteGroupClosure::build({parts[0], parts[1], parts[2]});
  FiniteGroupClosure b = FiniteGroupClosure::build({parts[2], parts[0], parts[1]});
  CHECK(a.order() == b.order());
  for (const auto& m : a.elements()) CHECK(b.member(m).has_value());
}

TEST_CASE("elements of a closure preserving a definite form stay unitary") {
  const Catalog& cat = Catalog::builtin();
  GroupInstance g = cat.instantiate("B4_34_DM", Params{});
  CuspSetup setup = cusp_setup(g, *cat.family("B4_34_DM").rows[0].cusp);
  auto parts = cusp_linear_parts("B4_34_DM", Params{});
  const MatC& k = setup.form.k_block.mat();
  FiniteGroupClosure closure = FiniteGroupClosure::build(parts);
  for (const auto& m : closure.elements()) CHECK(m.star() * k * m == k);
}

TEST_CASE("member returns nothing for matrices outside the group") {
  auto parts = cusp_linear_parts("B4_34_DM", Params{});
  FiniteGroupClosure closure = FiniteGroupClosure::build(parts);
  MatC outside = MatC::identity(parts[0].field(), 2);
  outside.at(0, 1) = parts[0].field()->from_rational(Rational(7));
  CHECK(!closure.member(outside).has_value());
  // every element order divides the group order (Lagrange sanity)
  for (const auto& m : closure.elements()) {
    unsigned order = 1;
    MatC acc = m;
    while (!acc.is_identity()) {
      acc = acc * m;
      ++order;
      REQUIRE(order <= 96);
    }
    CHECK(96 % order == 0);
  }
}
