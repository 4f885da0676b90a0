#include "chl/catalog.hpp"
#include "chl/wordgen.hpp"
#include "doctest.h"

using namespace chl;

// The OpenMP kernels must produce byte-identical results to the serial
// reference, independent of the thread count.

TEST_CASE("word enumeration: parallel equals serial") {
  const Catalog& cat = Catalog::builtin();
  GroupInstance g = cat.instantiate("G29", Params{{3}});
  auto gens = g.generator_matrices();
  for (bool inverses : {false, true}) {
    for (unsigned len : {1u, 2u, 3u}) {
      auto serial = words::enumerate_serial(gens, len, inverses);
      auto parallel = words::enumerate(gens, len, inverses);
      REQUIRE(serial.size() == parallel.size());
      for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].word == parallel[i].word);
        CHECK(serial[i].mat == parallel[i].mat);
      }
    }
  }
}

TEST_CASE("trace sampling: parallel equals serial across thread counts") {
  const Catalog& cat = Catalog::builtin();
  GroupInstance g = cat.instantiate("G33", Params{{3}});
  auto gens = g.generator_matrices();
  auto serial = words::adjoint_trace_set_serial(gens, 3);
  for (int jobs : {1, 2, 4}) {
    words::set_threads(jobs);
    auto parallel = words::adjoint_trace_set(gens, 3);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
  }
  words::set_threads(0);
}

TEST_CASE("free reduction drops inverse pairs") {
  const Catalog& cat = Catalog::builtin();
  GroupInstance g = cat.instantiate("G29", Params{{4}});
  auto gens = g.generator_matrices();
  auto sample = words::enumerate_serial(gens, 2, true);
  for (const auto& wm : sample) {
    REQUIRE(wm.word.size() <= 2);
    if (wm.word.size() == 2) CHECK(wm.word[0] != -wm.word[1]);
  }
  // counts: 8 letters, then 8*7 reduced two-letter words
  CHECK(sample.size() == 8 + 8 * 7);
}
