#include <catch2/catch_amalgamated.hpp>

#include "arbordet/linalg.hpp"
#include "arbordet/reduced.hpp"
#include "test_util.hpp"

using namespace arbordet;
using testutil::v;

namespace {

SymbolicMatrix full3() { return symbolic_full_matrix(3); }

/// The modified matrix whose third column is (1, 1, 0).
SymbolicMatrix modified3() {
  SymbolicMatrix a = full3();
  a.at(1, 3) = Polynomial(1);
  a.at(2, 3) = Polynomial(1);
  a.at(3, 3) = Polynomial{};
  return a;
}

}  // namespace

TEST_CASE("column replacement by unit columns") {
  SymbolicMatrix r = reduce_matrix(full3(), {{1}, {3}});
  CHECK(r.at(1, 3) == Polynomial(1));
  CHECK(r.at(2, 3).is_zero());
  CHECK(r.at(3, 3).is_zero());
  for (int i = 1; i <= 3; ++i) {
    CHECK(r.at(i, 1) == full3().at(i, 1));
    CHECK(r.at(i, 2) == full3().at(i, 2));
  }
  // reducing on every column with matching rows gives the identity
  SymbolicMatrix id = reduce_matrix(full3(), {{1, 2, 3}, {1, 2, 3}});
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      CHECK(id.at(i, j) == (i == j ? Polynomial(1) : Polynomial{}));
  // idempotent
  CHECK(reduce_matrix(r, {{1}, {3}}) == r);
}

TEST_CASE("reduction spec validation") {
  CHECK_THROWS_AS(reduce_matrix(full3(), {{1}, {4}}), DomainError);
  CHECK_THROWS_AS(reduce_matrix(full3(), {{0}, {1}}), DomainError);
  CHECK_THROWS_AS(reduce_matrix(full3(), {{1, 1}, {2, 3}}), DomainError);
  CHECK_THROWS_AS(reduce_matrix(full3(), {{1, 2}, {3, 3}}), DomainError);
  CHECK_THROWS_AS(reduce_matrix(full3(), {{1, 2}, {3}}), DomainError);
  CHECK_THROWS_AS(reduce_matrix(full3(), {{}, {}}), DomainError);
}

TEST_CASE("column alignment by minimal exchanges") {
  NormalizedReduction n1 = normalize_targets({{1}, {3}});
  CHECK(n1.cols_tilde == std::vector<int>{3});
  CHECK(n1.exchange_count == 0);
  CHECK(n1.aligned.empty());
  CHECK(n1.mismatched == std::vector<int>{0});

  NormalizedReduction n2 = normalize_targets({{1, 2}, {2, 1}});
  CHECK(n2.cols_tilde == std::vector<int>{1, 2});
  CHECK(n2.exchange_count == 1);
  CHECK(n2.aligned == std::vector<int>{0, 1});

  NormalizedReduction n3 = normalize_targets({{2}, {2}});
  CHECK(n3.cols_tilde == std::vector<int>{2});
  CHECK(n3.exchange_count == 0);
  CHECK(n3.aligned == std::vector<int>{0});

  ReductionSpec big{{1, 2, 3, 4, 5, 6, 7, 8, 9}, {9, 8, 7, 6, 5, 4, 3, 2, 1}};
  CHECK_THROWS_AS(normalize_targets(big), LimitError);
  CHECK_NOTHROW(normalize_targets(big, 9));
}

TEST_CASE("exchange counts match exhaustive search") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 25; ++t) {
    int n = 4 + t % 2;
    int m = 2 + t % 3;
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> p(pool.begin(), pool.begin() + m);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> q(pool.begin(), pool.begin() + m);
    NormalizedReduction norm = normalize_targets({p, q});
    CHECK(norm.exchange_count == testutil::brute_force_exchange_count(p, q));
    // every element of q shared with p sits at its row position
    for (int k = 0; k < m; ++k) {
      auto it = std::find(p.begin(), p.end(), norm.cols_tilde[k]);
      if (it != p.end()) CHECK(static_cast<int>(it - p.begin()) == k);
    }
  }
}

TEST_CASE("cycle signs of qualifying branchings") {
  // one replaced column, no mismatch cycle possible: sign +1
  SymbolicMatrix a = full3();
  NormalizedReduction norm = normalize_targets({{1}, {3}});
  MatrixDigraph g = reduced_digraph(a, norm);
  // 1 <- 2 (v_2_1), 2 <- 3 (v_3_2), 3 <- 0: rooted at 3, reaches row 1
  Branching b;
  for (const Arc& e : g.arcs()) {
    if ((e.source == 2 && e.target == 1) || (e.source == 3 && e.target == 2) ||
        (e.source == 0 && e.target == 3))
      b.arc_ids.push_back(e.id);
  }
  REQUIRE(b.arc_ids.size() == 3);
  CHECK(epsilon_of(b, norm, g) == 1);

  // a branching that never reaches row 1 does not qualify
  Branching bad;
  for (const Arc& e : g.arcs())
    if (e.source == 0) bad.arc_ids.push_back(e.id);
  REQUIRE(bad.arc_ids.size() == 3);
  CHECK_THROWS_AS(epsilon_of(bad, norm, g), DomainError);
}

TEST_CASE("a single two-element cycle flips the sign") {
  // rows {1,2} against columns {3,4}: subtree of 3 holds row 2 and subtree
  // of 4 holds row 1, giving one cycle through both positions.
  NormalizedReduction norm;
  norm.rows = {1, 2};
  norm.cols_tilde = {3, 4};
  norm.mismatched = {0, 1};
  MatrixDigraph g(4, {{0, 3, Polynomial(1)},
                      {0, 4, Polynomial(1)},
                      {3, 2, v(3, 2)},
                      {4, 1, v(4, 1)}});
  Branching b{{1, 2, 3, 4}, {3, 4}};
  // ids follow canonical order: (4,1), (3,2), (0,3), (0,4)
  b.arc_ids = {1, 2, 3, 4};
  CHECK(epsilon_of(b, norm, g) == -1);
}

TEST_CASE("two disjoint cycles cancel their signs") {
  NormalizedReduction norm;
  norm.rows = {1, 2, 3, 4};
  norm.cols_tilde = {5, 6, 7, 8};
  norm.mismatched = {0, 1, 2, 3};
  MatrixDigraph g(8, {{0, 5, Polynomial(1)},
                      {0, 6, Polynomial(1)},
                      {0, 7, Polynomial(1)},
                      {0, 8, Polynomial(1)},
                      {5, 2, Polynomial::symbol("a")},
                      {6, 1, Polynomial::symbol("b")},
                      {7, 4, Polynomial::symbol("c")},
                      {8, 3, Polynomial::symbol("d")}});
  Branching b;
  for (const Arc& e : g.arcs()) b.arc_ids.push_back(e.id);
  CHECK(epsilon_of(b, norm, g) == 1);  // (-1)^(2-1) twice
}

TEST_CASE("graphical reduced determinant: fixed cases") {
  Polynomial dr = det_reduced_graphical(full3(), {{1}, {3}});
  Polynomial expected =
      v(2, 1) * v(3, 2) + v(3, 1) * (v(2, 2) + v(1, 2) + v(3, 2));
  CHECK(dr == expected);
  CHECK(dr == det_exact(reduce_matrix(full3(), {{1}, {3}})));

  // full replacement turns the matrix into the identity
  CHECK(det_reduced_graphical(full3(), {{1, 2, 3}, {1, 2, 3}}) == Polynomial(1));

  // a swapped full replacement is a signed permutation matrix
  CHECK(det_reduced_graphical(full3(), {{1, 2, 3}, {2, 1, 3}}) == Polynomial(-1));
}

TEST_CASE("graphical reduced determinant equals the elimination oracle") {
  std::mt19937_64 rng(79);
  long long with_exchanges = 0, with_negative = 0;
  for (int t = 0; t < 60; ++t) {
    int n = 2 + t % 4;
    SymbolicMatrix a = testutil::random_int_matrix(rng, n, -3, 3);
    int m = 1 + static_cast<int>(rng() % std::min(3, n));
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> p(pool.begin(), pool.begin() + m);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> q(pool.begin(), pool.begin() + m);
    ReductionSpec spec{p, q};
    ReducedDetStats stats;
    Polynomial dr = det_reduced_graphical(a, spec, &stats);
    CHECK(dr == det_exact(reduce_matrix(a, spec)));
    if (stats.exchange_count >= 1) ++with_exchanges;
    if (stats.negative_sign >= 1) ++with_negative;
  }
  // the sample must hit both interesting regimes
  CHECK(with_exchanges > 0);
  CHECK(with_negative > 0);

  // symbolic check on the full 4x4 with a guaranteed sign -1 contribution
  ReducedDetStats stats;
  SymbolicMatrix a4 = symbolic_full_matrix(4);
  ReductionSpec spec{{1, 2}, {3, 4}};
  Polynomial dr = det_reduced_graphical(a4, spec, &stats);
  CHECK(dr == det_exact(reduce_matrix(a4, spec)));
  CHECK(stats.negative_sign > 0);
}

TEST_CASE("column exchanges only flip the determinant sign") {
  std::mt19937_64 rng(83);
  for (int t = 0; t < 30; ++t) {
    int n = 3 + t % 3;
    SymbolicMatrix a = testutil::random_int_matrix(rng, n, -3, 3);
    int m = 2 + t % 2;
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> p(pool.begin(), pool.begin() + m);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> q(pool.begin(), pool.begin() + m);
    NormalizedReduction norm = normalize_targets({p, q});
    Polynomial lhs = det_exact(reduce_matrix(a, {p, q}));
    Polynomial rhs = det_exact(reduce_matrix(a, {norm.rows, norm.cols_tilde}));
    if (norm.exchange_count % 2 != 0) rhs = -rhs;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("non-qualifying branchings cancel pairwise") {
  // The signed sum over ALL arborescences of the replaced-column digraph
  // (keeping the weight -1 arcs) must equal the qualifying-only sum.
  std::mt19937_64 rng(89);
  for (int t = 0; t < 25; ++t) {
    int n = 2 + t % 3;
    SymbolicMatrix a = testutil::random_int_matrix(rng, n, -3, 3);
    int m = 1 + static_cast<int>(rng() % std::min(2, n));
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> p(pool.begin(), pool.begin() + m);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> q(pool.begin(), pool.begin() + m);
    NormalizedReduction norm = normalize_targets({p, q});

    SymbolicMatrix reduced = reduce_matrix(a, {norm.rows, norm.cols_tilde});
    Polynomial brute = det_tree_sum(digraph_from_matrix(reduced));
    Polynomial filtered = det_reduced_graphical(a, ReductionSpec{p, q});
    if (norm.exchange_count % 2 != 0) filtered = -filtered;
    CHECK(brute == filtered);
    CHECK(brute == det_exact(reduced));
  }
}

TEST_CASE("splitting a modified matrix with a multi-1 column") {
  auto specs = split_modified_reduced(modified3());
  REQUIRE(specs.size() == 2);
  CHECK(specs[0].first.rows == std::vector<int>{1});
  CHECK(specs[0].first.cols == std::vector<int>{3});
  CHECK(specs[0].second == 1);
  CHECK(specs[1].first.rows == std::vector<int>{2});
  CHECK(specs[1].first.cols == std::vector<int>{3});

  Polynomial total;
  for (const auto& [spec, sign] : specs)
    total += Polynomial(sign) * det_reduced_graphical(modified3(), spec);
  CHECK(total == det_exact(modified3()));
}

TEST_CASE("splitting: single-1 columns and multiple special columns") {
  SymbolicMatrix a = full3();
  a.at(2, 1) = Polynomial(1);
  a.at(1, 1) = Polynomial{};
  a.at(3, 1) = Polynomial{};
  auto one = split_modified_reduced(a);
  REQUIRE(one.size() == 1);
  CHECK(one[0].first.rows == std::vector<int>{2});
  CHECK(one[0].first.cols == std::vector<int>{1});

  // two special columns with 2 and 1 ones
  SymbolicMatrix b = full3();
  b.at(1, 1) = Polynomial(1);
  b.at(2, 1) = Polynomial(1);
  b.at(3, 1) = Polynomial{};
  b.at(1, 3) = Polynomial{};
  b.at(2, 3) = Polynomial{};
  b.at(3, 3) = Polynomial(1);
  auto specs = split_modified_reduced(b);
  REQUIRE(specs.size() == 2);
  Polynomial total;
  for (const auto& [spec, sign] : specs)
    total += Polynomial(sign) * det_exact(reduce_matrix(b, spec));
  CHECK(total == det_exact(b));
}

TEST_CASE("splitting validates explicit special columns") {
  SymbolicMatrix a = full3();
  std::vector<int> cols{2};
  CHECK_THROWS_WITH(split_modified_reduced(a, &cols),
                    Catch::Matchers::ContainsSubstring("other than 0 or 1"));
  CHECK_THROWS_AS(split_modified_reduced(a), DomainError);  // nothing special
  std::vector<int> empty;
  CHECK_THROWS_AS(split_modified_reduced(a, &empty), DomainError);
}
