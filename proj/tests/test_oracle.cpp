#include <doctest.h>

#include <random>
#include <set>

#include "bklib/oracle.hpp"

using namespace bk;
using namespace bk::oracle;

namespace {
Options opts;

Module enum_summands(std::vector<CyclicSummand> s, int64_t p, const RingParams* hint = nullptr) {
  return enumerate(BKModule::from_summands(std::move(s), p), p, hint, opts);
}
}  // namespace

TEST_CASE("howell normal form basics") {
  // subgroup of (Z/8)^2 spanned by (2,0) and (0,4): index 8*8/(4*2) = 8
  HowellForm h(2, 3, 2, {{2, 0}, {0, 4}});
  CHECK(h.log_span() == 3);
  CHECK(h.log_quotient() == 3);
  CHECK(h.contains({2, 4}));
  CHECK(!h.contains({1, 0}));
  CHECK(h.reduce({3, 5}) == std::vector<int64_t>{1, 1});
}

TEST_CASE("howell canonical representatives are coset invariants") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<std::vector<int64_t>> rows;
    std::uniform_int_distribution<int64_t> dist(0, 26);
    for (int i = 0; i < 4; ++i) rows.push_back({dist(rng), dist(rng), dist(rng)});
    HowellForm h(3, 3, 3, rows);
    std::vector<int64_t> v = {dist(rng), dist(rng), dist(rng)};
    for (const auto& r : rows) {
      // v and v + multiple of r must reduce identically
      int64_t k = dist(rng);
      std::vector<int64_t> w(3);
      for (int i = 0; i < 3; ++i) w[i] = (v[i] + k * r[i]) % 27;
      CHECK(h.reduce(v) == h.reduce(w));
    }
  }
}

TEST_CASE("enumerate cyclic summands: counts") {
  // PUr(1,2), p=2: F_2[u]/u^2 has 4 elements
  CHECK(enum_summands({CyclicSummand::pur(1, 2)}, 2).cardinality(opts) == 4);
  // PUr(2,1), p=3: Z/9
  CHECK(enum_summands({CyclicSummand::pur(2, 1)}, 3).cardinality(opts) == 9);
  // S/(u+2, u^2): u^2 = u*(u+2) - 2(u+2) + 4, so the ideal contains 4 and the
  // quotient is Z/4 with 4 elements (u acts as -2)
  CHECK(enum_summands({CyclicSummand::fur(1, {1}, 2)}, 2).cardinality(opts) == 4);
  // zero module
  CHECK(enum_summands({}, 2).cardinality(opts) == 1);
}

TEST_CASE("enumerate rejects infinite modules") {
  CHECK_THROWS_AS(enum_summands({CyclicSummand::free_rank_one()}, 2), error);
  CHECK_THROWS_AS(enum_summands({CyclicSummand::ppow(1)}, 2), error);
  // presentation of S/p at its own params is not certified finite
  RingParams pr(2, 3, 6);
  Presentation pres;
  pres.params = pr;
  pres.gens = 1;
  pres.relations = {{TruncatedSeries::from_coeffs(pr, {2})}};
  CHECK_THROWS_AS(enumerate(BKModule::from_presentation(pres), 2, nullptr, opts), error);
}

TEST_CASE("budget is enforced") {
  Options small;
  small.budget = 100;
  auto m = BKModule::from_summands({CyclicSummand::pur(1, 8)}, 2);
  CHECK_THROWS_AS(enumerate(m, 2, nullptr, small).cardinality(small), error);
}

TEST_CASE("length_via_cardinality") {
  auto m = enum_summands({CyclicSummand::fur(1, {1}, 2)}, 2);
  CHECK(length_via_cardinality(m, opts) == 2);  // |Z/4| = 2^2
  CHECK(length_via_cardinality(enum_summands({}, 3), opts) == 0);
  CHECK(length_via_cardinality(enum_summands({CyclicSummand::pur(2, 1)}, 3), opts) == 2);
}

TEST_CASE("module closure spot-checks") {
  auto m = enum_summands({CyclicSummand::pur(1, 3), CyclicSummand::fur(1, {1}, 2)}, 2);
  auto elems = m.list_elements(opts);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
  for (int rep = 0; rep < 50; ++rep) {
    const auto& a = elems[pick(rng)];
    const auto& b = elems[pick(rng)];
    std::vector<int64_t> sum(a.size());
    for (size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
    auto c = m.nf(sum);
    CHECK(std::find(elems.begin(), elems.end(), c) != elems.end());
    auto sc = m.nf(m.scalar_apply(TruncatedSeries::monomial(m.params, 1), a));
    CHECK(std::find(elems.begin(), elems.end(), sc) != elems.end());
  }
}

TEST_CASE("kernel_of_scalar examples") {
  // N = F_p[u]/u^5, s = u^3: kernel is u^2*(...) of cardinality p^3
  auto m = enum_summands({CyclicSummand::pur(1, 5)}, 3);
  auto k = kernel_of_scalar(m, TruncatedSeries::monomial(m.params, 3), opts);
  CHECK(k.subset_elements.size() == 27);
  CHECK(length_via_cardinality(k, opts) == 3);
  // s = 1 -> zero module; s = 0 -> everything
  CHECK(kernel_of_scalar(m, TruncatedSeries::one(m.params), opts).subset_elements.size() == 1);
  CHECK(kernel_of_scalar(m, TruncatedSeries::zero(m.params), opts).subset_elements.size() ==
        m.cardinality(opts));
}

TEST_CASE("kernel_length agrees with explicit kernels") {
  for (auto& s : {CyclicSummand::pur(1, 5), CyclicSummand::pur(2, 2), CyclicSummand::fur(1, {1}, 3)}) {
    for (int64_t p : {2, 3}) {
      if (s.kind == SummandKind::FUr && p == 3) continue;
      auto m = enum_summands({s}, p);
      for (int32_t d = 0; d <= 3; ++d) {
        auto sc = TruncatedSeries::monomial(m.params, d);
        CHECK(kernel_length(m, sc) ==
              length_via_cardinality(kernel_of_scalar(m, sc, opts), opts));
      }
      auto pscalar = TruncatedSeries::from_coeffs(m.params, {p});
      CHECK(kernel_length(m, pscalar) ==
            length_via_cardinality(kernel_of_scalar(m, pscalar, opts), opts));
    }
  }
}

TEST_CASE("kernel containment in the u-tower") {
  auto m = enum_summands({CyclicSummand::pur(1, 4), CyclicSummand::fur(2, {1}, 3)}, 2);
  size_t prev = 1;
  for (int32_t b = 1; b <= 5; ++b) {
    auto k = kernel_of_scalar(m, TruncatedSeries::monomial(m.params, b), opts);
    CHECK(k.subset_elements.size() >= prev);
    prev = k.subset_elements.size();
  }
  auto full = u_power_torsion(m, opts);
  CHECK(full.subset_elements.size() == m.cardinality(opts));  // whole module is u-torsion
}

TEST_CASE("image length via distinct count matches index") {
  auto m = enum_summands({CyclicSummand::pur(1, 5)}, 3, nullptr);
  auto u2 = TruncatedSeries::monomial(m.params, 2);
  int64_t im = image_length_distinct(m, u2, opts);
  CHECK(im == length_via_cardinality(m, opts) - kernel_length(m, u2));
}

TEST_CASE("annihilator shapes") {
  // F_p[u]/u^3: Ann = (p, u^3)
  auto m = enum_summands({CyclicSummand::pur(1, 3)}, 2);
  auto a = annihilator_shape(m);
  CHECK(a.p_kills);
  CHECK(a.alpha == 3);
  REQUIRE(a.simple_element.has_value());

  // FUr(1,1,2), p=2: u+2 annihilates, not p-torsion
  auto f = enum_summands({CyclicSummand::fur(1, {1}, 2)}, 2);
  auto af = annihilator_shape(f);
  CHECK(!af.p_kills);
  CHECK(af.alpha == 1);
  REQUIRE(af.simple_element.has_value());
  CHECK(af.simple_element->first == 1);
  CHECK(af.simple_element->second[0] % 2 == 1);

  // zero module
  auto z = annihilator_shape(enum_summands({}, 2));
  CHECK(z.p_kills);
  CHECK(!z.alpha.has_value());
}

TEST_CASE("brute_force_filtration: cyclic and free examples") {
  // M presenting PUr(1,2): u_infty length 2, everything else 0
  RingParams pr(2, 5, 8);
  Presentation pres;
  pres.params = pr;
  pres.gens = 1;
  pres.relations = {{TruncatedSeries::from_coeffs(pr, {2})},
                    {TruncatedSeries::monomial(pr, 2)}};
  auto bf = brute_force_filtration(pres, opts);
  CHECK(bf.u_infty_len == 2);
  CHECK(bf.tor_rank_layers == 0);
  CHECK(bf.free_rank == 0);
  CHECK(bf.mbar_len == 0);

  // M presenting S (free of rank 1): Mbar = 0
  Presentation fr;
  fr.params = pr;
  fr.gens = 1;
  auto bff = brute_force_filtration(fr, opts);
  CHECK(bff.u_infty_len == 0);
  CHECK(bff.tor_rank_layers == 0);
  CHECK(bff.free_rank == 1);
  CHECK(bff.mbar_len == 0);
}

TEST_CASE("brute_force_filtration: extension of Ppow(1) by PUr(1,1)") {
  // generators x, y with px = 0, ux = 0, py = x: a nonsplit extension
  // 0 -> k -> M -> S/p -> 0, i.e. M = S/(p^2, pu)
  RingParams pr(2, 5, 8);
  Presentation pres;
  pres.params = pr;
  pres.gens = 2;
  auto z = TruncatedSeries::zero(pr);
  auto two = TruncatedSeries::from_coeffs(pr, {2});
  pres.relations = {{two, z},
                    {TruncatedSeries::monomial(pr, 1), z},
                    {-TruncatedSeries::one(pr), two}};
  auto bf = brute_force_filtration(pres, opts);
  CHECK(bf.u_infty_len == 1);
  CHECK(bf.tor_rank_layers == 1);
  CHECK(bf.free_rank == 0);
  CHECK(bf.mbar_len == 0);
}

TEST_CASE("brute_force_filtration: the (p,u) ideal has Mbar = k") {
  // M = (p, u) < S: generators x -> p, y -> u, relation u*x - p*y = 0.
  // M is torsion free of rank 1 with reflexive hull S and Mbar = S/(p,u) = k.
  RingParams pr(2, 6, 10);
  Presentation pres;
  pres.params = pr;
  pres.gens = 2;
  pres.relations = {{TruncatedSeries::monomial(pr, 1), -TruncatedSeries::from_coeffs(pr, {2})}};
  auto bf = brute_force_filtration(pres, opts);
  CHECK(bf.u_infty_len == 0);
  CHECK(bf.tor_rank_layers == 0);
  CHECK(bf.free_rank == 1);
  CHECK(bf.mbar_len == 1);
}

TEST_CASE("summand and presentation forms are cross-checked on demand") {
  // matching pair: PUr(1,2) as summand and as presentation
  RingParams pr(2, 4, 10);
  BKModule both = BKModule::from_summands({CyclicSummand::pur(1, 2)}, 2);
  Presentation pres;
  pres.params = pr;
  pres.gens = 1;
  pres.relations = {{TruncatedSeries::from_coeffs(pr, {2})},
                    {TruncatedSeries::monomial(pr, 2)}};
  both.presentation = pres;
  CHECK(summands_match_presentation(both, 2, opts));

  // mismatched pair: the presentation describes PUr(1,3)
  BKModule bad = BKModule::from_summands({CyclicSummand::pur(1, 2)}, 2);
  Presentation wrong;
  wrong.params = pr;
  wrong.gens = 1;
  wrong.relations = {{TruncatedSeries::from_coeffs(pr, {2})},
                     {TruncatedSeries::monomial(pr, 3)}};
  bad.presentation = wrong;
  CHECK(!summands_match_presentation(bad, 2, opts));
}

TEST_CASE("p-power torsion stabilizes") {
  // PUr(2,2) is killed by p^2: the p-power kernel tower stabilizes at the
  // whole module
  auto m = enum_summands({CyclicSummand::pur(2, 2)}, 2);
  auto t = p_power_torsion(m, opts);
  CHECK(t.subset_elements.size() == m.cardinality(opts));
  // and the p^1 layer is the proper submodule p*M + socle part
  auto k1 = kernel_of_scalar(m, TruncatedSeries::from_coeffs(m.params, {2}), opts);
  CHECK(k1.subset_elements.size() < t.subset_elements.size());
}

TEST_CASE("brute_force_filtration: ideal (p, u^2) has Mbar of length 2") {
  RingParams pr(2, 6, 12);
  Presentation pres;
  pres.params = pr;
  pres.gens = 2;
  pres.relations = {{TruncatedSeries::monomial(pr, 2), -TruncatedSeries::from_coeffs(pr, {2})}};
  auto bf = brute_force_filtration(pres, opts);
  CHECK(bf.u_infty_len == 0);
  CHECK(bf.tor_rank_layers == 0);
  CHECK(bf.free_rank == 1);
  CHECK(bf.mbar_len == 2);
}

TEST_CASE("brute_force_filtration: mixed torsion plus Mbar") {
  // (p, u) ideal plus a k summand: u_infty 1, free 1, Mbar 1
  RingParams pr(2, 6, 12);
  Presentation pres;
  pres.params = pr;
  pres.gens = 3;
  auto z = TruncatedSeries::zero(pr);
  auto two = TruncatedSeries::from_coeffs(pr, {2});
  pres.relations = {{TruncatedSeries::monomial(pr, 1), -two, z},
                    {z, z, two},
                    {z, z, TruncatedSeries::monomial(pr, 1)}};
  auto bf = brute_force_filtration(pres, opts);
  CHECK(bf.u_infty_len == 1);
  CHECK(bf.tor_rank_layers == 0);
  CHECK(bf.free_rank == 1);
  CHECK(bf.mbar_len == 1);
}

TEST_CASE("brute_force_filtration: ideal (p^2, u) has Mbar killed by p^2") {
  RingParams pr(2, 7, 12);
  Presentation pres;
  pres.params = pr;
  pres.gens = 2;
  pres.relations = {{TruncatedSeries::monomial(pr, 1), -TruncatedSeries::from_coeffs(pr, {4})}};
  auto bf = brute_force_filtration(pres, opts);
  CHECK(bf.u_infty_len == 0);
  CHECK(bf.free_rank == 1);
  CHECK(bf.mbar_len == 2);  // Mbar = S/(p^2, u), a length-2 module not killed by p
}

TEST_CASE("FUr summands are killed by both a u-power and a p-power") {
  // S/(u + 2x, u^2): every element is killed by u^2 and by p^2
  auto m = enum_summands({CyclicSummand::fur(1, {1}, 2)}, 2);
  auto u2 = TruncatedSeries::monomial(m.params, 2);
  auto p2 = TruncatedSeries::from_coeffs(m.params, {4});
  for (const auto& v : m.list_elements(opts)) {
    CHECK(m.is_zero_vec(m.nf(m.scalar_apply(u2, v))));
    CHECK(m.is_zero_vec(m.nf(m.scalar_apply(p2, v))));
  }
}

TEST_CASE("howell span size equals brute-force subgroup closure") {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 30; ++rep) {
    int64_t p = (rep % 2) ? 3 : 2;
    int32_t m = 2 + rep % 2;  // Z/4, Z/27
    int64_t mod = 1;
    for (int32_t i = 0; i < m; ++i) mod *= p;
    int32_t dim = 3;
    std::uniform_int_distribution<int64_t> dist(0, mod - 1);
    std::vector<std::vector<int64_t>> rows(2, std::vector<int64_t>(dim));
    for (auto& r : rows)
      for (auto& x : r) x = dist(rng);
    HowellForm h(p, m, dim, rows);

    // explicit closure of the generated subgroup
    std::set<std::vector<int64_t>> seen = {std::vector<int64_t>(dim, 0)};
    std::vector<std::vector<int64_t>> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
      auto v = queue.back();
      queue.pop_back();
      for (const auto& g : rows) {
        std::vector<int64_t> w(dim);
        for (int32_t i = 0; i < dim; ++i) w[i] = (v[i] + g[i]) % mod;
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
    int64_t log_size = 0;
    size_t n = seen.size();
    while (n % (size_t)p == 0) {
      n /= (size_t)p;
      ++log_size;
    }
    REQUIRE(n == 1);
    CHECK(h.log_span() == log_size);
  }
}
