#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace slat;
using namespace slat::testing;

namespace {

bool is_antichain_up(const UpSet& u) {
  for (std::size_t i = 0; i < u.basis.size(); ++i)
    for (std::size_t j = 0; j < u.basis.size(); ++j)
      if (i != j && u.basis[i].dominates(u.basis[j])) return false;
  return true;
}

bool is_antichain_down(const DownSet& d) {
  for (std::size_t i = 0; i < d.basis.size(); ++i)
    for (std::size_t j = 0; j < d.basis.size(); ++j)
      if (i != j && d.basis[j].dominates(d.basis[i])) return false;
  return true;
}

OmegaMarking random_omega(Rng& rng, std::size_t dim) {
  std::vector<Value> v(dim);
  for (auto& x : v) {
    x = rnd(rng, 0, 4);
    if (rng() % 4 == 0) x = kOmega;
  }
  return OmegaMarking(std::move(v));
}

DownSet random_downset(Rng& rng, std::size_t dim) {
  std::vector<OmegaMarking> basis;
  std::size_t k = rng() % 4;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(random_omega(rng, dim));
  return maximize(std::move(basis));
}

UpSet random_upset(Rng& rng, std::size_t dim) {
  std::vector<Marking> basis;
  std::size_t k = rng() % 4;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(random_marking(rng, dim, 4));
  return minimize(std::move(basis));
}

}  // namespace

TEST_SUITE("wqo") {

TEST_CASE("minimize and maximize keep only extremal elements") {
  UpSet u = minimize({Marking({2, 0, 0}), Marking({3, 0, 0}), Marking({1, 1, 0})});
  CHECK(u.basis == std::vector<Marking>{Marking({1, 1, 0}), Marking({2, 0, 0})});

  DownSet d = maximize({OmegaMarking({0, kOmega, 0}), OmegaMarking({0, 3, 0})});
  CHECK(d.basis == std::vector<OmegaMarking>{OmegaMarking({0, kOmega, 0})});
}

TEST_CASE("minimize agrees with a brute-force dominance filter") {
  Rng rng(61);
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<Marking> ms;
    for (int i = 0; i < 50; ++i) ms.push_back(random_marking(rng, 3, 5));
    UpSet u = minimize(ms);
    CHECK(is_antichain_up(u));
    std::set<Marking> expected;
    for (const auto& m : ms) {
      bool minimal = true;
      for (const auto& o : ms)
        if (o != m && m.dominates(o)) minimal = false;
      if (minimal) expected.insert(m);
    }
    CHECK(std::set<Marking>(u.basis.begin(), u.basis.end()) == expected);
  }
}

TEST_CASE("membership against the known dead-set basis") {
  DownSet d = feedback_dead_all();
  CHECK(member_down(d, Marking({0, 5, 0})));
  CHECK(member_down(d, Marking({7, 0, 0})));
  CHECK_FALSE(member_down(d, Marking({1, 1, 0})));
  CHECK_FALSE(member_down(DownSet{}, Marking({0, 0, 0})));
  CHECK_FALSE(member_up(UpSet{}, Marking({0, 0, 0})));
  CHECK_THROWS_AS(member_down(d, Marking({1, 1})), input_error);
}

TEST_CASE("complement of an up-set: worked example") {
  UpSet s = minimize({Marking({0, 0, 1}), Marking({1, 1, 0}), Marking({2, 0, 0})});
  DownSet d = complement_up(s, 3);
  CHECK(d.basis ==
        std::vector<OmegaMarking>{OmegaMarking({0, kOmega, 0}), OmegaMarking({1, 0, 0})});
  CHECK(complement_down(d, 3) == s);
}

TEST_CASE("union and intersection basics") {
  DownSet d_t1{{OmegaMarking({0, kOmega, 0}), OmegaMarking({1, 0, 0})}};
  DownSet extra{{OmegaMarking({kOmega, 0, 0})}};
  CHECK(union_down(d_t1, extra) == feedback_dead_all());

  DownSet full{{OmegaMarking::full(3)}};
  CHECK(intersect_down(feedback_dead_all(), full) == feedback_dead_all());
}

TEST_CASE("set algebra agrees with brute force on the box [0,6]^4") {
  Rng rng(71);
  const std::size_t dim = 4;
  for (int iter = 0; iter < 30; ++iter) {
    DownSet a = random_downset(rng, dim);
    DownSet b = random_downset(rng, dim);
    UpSet u = random_upset(rng, dim);
    DownSet cu = complement_up(u, dim);
    UpSet cd = complement_down(a, dim);
    DownSet un = union_down(a, b);
    DownSet in = intersect_down(a, b);
    CHECK(is_antichain_down(cu));
    CHECK(is_antichain_up(cd));
    CHECK(complement_down(complement_up(u, dim), dim) == u);
    for_box(dim, 6, [&](const std::vector<Value>& v) {
      Marking m(v);
      bool ina = member_down(a, m), inb = member_down(b, m);
      CHECK(member_down(un, m) == (ina || inb));
      CHECK(member_down(in, m) == (ina && inb));
      CHECK(member_down(cu, m) == !member_up(u, m));
      CHECK(member_up(cd, m) == !ina);
    });
  }
}

TEST_CASE("omega rendering") {
  CHECK(omega_value_to_string(kOmega) == "w");
  CHECK(omega_value_to_string(3) == "3");
}

}  // TEST_SUITE
