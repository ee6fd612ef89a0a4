#include <set>

#include "doctest.h"
#include "qsched/errors.hpp"
#include "qsched/topology.hpp"
#include "support/oracles.hpp"

using namespace qsched;

namespace {

NetworkSpec abcd_spec() {
  NetworkSpec spec;
  spec.nodes = {"A", "B", "C", "D"};
  spec.edges = {{"A", "B", 1.0}, {"B", "C", 1.0}, {"C", "D", 1.0}};
  spec.routes = {{"A", "B", "C", "D"}};
  spec.users = {{"A", "D", 0.1}};
  spec.eta = 0.9;
  return spec;
}

}  // namespace

TEST_CASE("ABCD route reproduces the reference matrix exactly") {
  const TransitionSystem ts = build_transition_system(abcd_spec());

  REQUIRE(ts.num_queues() == 6);
  REQUIRE(ts.num_transitions() == 4);

  std::vector<std::string> queue_names;
  for (int q = 0; q < 6; ++q) queue_names.push_back(ts.queue_name(q));
  CHECK(queue_names == std::vector<std::string>{"AB", "BC", "CD", "AC", "BD", "AD"});

  std::vector<std::string> transition_names;
  for (int t = 0; t < 4; ++t) transition_names.push_back(ts.transition_name(t));
  CHECK(transition_names ==
        std::vector<std::string>{"A[B]C", "B[C]D", "A[B]D", "A[C]D"});

  Eigen::MatrixXi m(6, 4);
  // Rows AB BC CD AC BD AD; columns A[B]C B[C]D A[B]D A[C]D.
  m << -1,  0, -1,  0,
       -1, -1,  0,  0,
        0, -1,  0, -1,
        1,  0,  0, -1,
        0,  1, -1,  0,
        0,  0,  1,  1;
  CHECK(ts.m_tilde().leftCols(4) == m);
  CHECK(ts.m_tilde().rightCols(6) == -Eigen::MatrixXi::Identity(6, 6));
  CHECK(ts.n_tilde().leftCols(4) == Eigen::MatrixXi::Zero(6, 4));
  CHECK(ts.n_tilde().rightCols(6) == -Eigen::MatrixXi::Identity(6, 6));

  CHECK(ts.is_physical(0));
  CHECK(ts.is_physical(1));
  CHECK(ts.is_physical(2));
  CHECK_FALSE(ts.is_physical(3));
  CHECK(ts.is_user_pair(5));
  CHECK(ts.alpha()[0] == 1.0);
  CHECK(ts.alpha()[3] == 0.0);
  CHECK(ts.beta()[5] == doctest::Approx(0.1));
  CHECK(ts.beta()[0] == 0.0);
}

TEST_CASE("single edge route has one queue and no transitions") {
  NetworkSpec spec;
  spec.nodes = {"A", "B"};
  spec.edges = {{"A", "B", 1.0}};
  spec.routes = {{"A", "B"}};
  spec.users = {{"A", "B", 0.2}};
  const TransitionSystem ts = build_transition_system(spec);
  CHECK(ts.num_queues() == 1);
  CHECK(ts.num_transitions() == 0);
  CHECK(ts.m_tilde() == -Eigen::MatrixXi::Identity(1, 1));
}

TEST_CASE("overlapping ABCDE/BCDEF routes dedupe queues and transitions") {
  NetworkSpec spec;
  spec.nodes = {"A", "B", "C", "D", "E", "F"};
  spec.edges = {{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}, {"D", "E", 1}, {"E", "F", 1}};
  spec.routes = {{"A", "B", "C", "D", "E"}, {"B", "C", "D", "E", "F"}};
  spec.users = {{"A", "E", 0.1}, {"B", "F", 0.1}};
  const TransitionSystem ts = build_transition_system(spec);

  // Independent enumeration of subpath pairs and position triples.
  std::set<std::pair<char, char>> pairs;
  std::set<std::tuple<char, char, char>> triples;
  for (const std::string route : {"ABCDE", "BCDEF"})
    for (size_t a = 0; a < route.size(); ++a)
      for (size_t b = a + 1; b < route.size(); ++b) {
        pairs.insert({route[a], route[b]});
        for (size_t c = b + 1; c < route.size(); ++c)
          triples.insert({route[a], route[b], route[c]});
      }
  CHECK(ts.num_queues() == static_cast<int>(pairs.size()));
  CHECK(ts.num_transitions() == static_cast<int>(triples.size()));
  CHECK(ts.num_queues() == 14);
  CHECK(ts.num_transitions() == 16);

  for (const auto& tr : ts.transitions()) {
    CHECK(triples.count({static_cast<char>('A' + tr.i), static_cast<char>('A' + tr.j),
                         static_cast<char>('A' + tr.k)}) == 1);
  }

  // The shared BCDE segment contributes each of its triples exactly once.
  int shared = 0;
  for (int t = 0; t < ts.num_transitions(); ++t) {
    const auto& tr = ts.transitions()[t];
    if (tr.i >= 1 && tr.k <= 4) ++shared;
  }
  CHECK(shared == 4);
}

TEST_CASE("column sums of the extended matrix are -1 on random topologies") {
  RandomSource rng(20240817);
  for (int trial = 0; trial < 50; ++trial) {
    const NetworkSpec spec = qsched::testing::random_spec(rng);
    const TransitionSystem ts = build_transition_system(spec);
    const Eigen::VectorXi sums = ts.m_tilde().colwise().sum();
    for (int j = 0; j < sums.size(); ++j) CHECK(sums[j] == -1);
  }
}

TEST_CASE("single route counts match binomial coefficients up to 7 nodes") {
  auto choose = [](int n, int k) {
    int64_t v = 1;
    for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
    return static_cast<int>(v);
  };
  for (int m = 1; m <= 6; ++m) {
    NetworkSpec spec;
    for (int i = 0; i <= m; ++i) spec.nodes.push_back(std::string(1, static_cast<char>('A' + i)));
    for (int i = 0; i < m; ++i) spec.edges.push_back({spec.nodes[i], spec.nodes[i + 1], 1.0});
    spec.routes.push_back(spec.nodes);
    spec.users.push_back({spec.nodes.front(), spec.nodes.back(), 0.1});
    const TransitionSystem ts = build_transition_system(spec);
    CHECK(ts.num_queues() == choose(m + 1, 2));
    CHECK(ts.num_transitions() == choose(m + 1, 3));
  }
}

TEST_CASE("queue ranks count the swaps needed to assemble one ebit") {
  const TransitionSystem ts = build_transition_system(abcd_spec());
  CHECK(queue_rank(ts, "A", "B") == 0);
  CHECK(queue_rank(ts, "A", "C") == 1);
  CHECK(queue_rank(ts, "B", "D") == 1);
  CHECK(queue_rank(ts, "A", "D") == 2);
  CHECK(queue_rank(ts, "D", "A") == 2);  // unordered pair
  CHECK_THROWS_AS(queue_rank(ts, "A", "Z"), SpecError);

  NetworkSpec big;
  big.nodes = {"A", "B", "C", "D", "E"};
  big.edges = {{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}, {"D", "E", 1}};
  big.routes = {{"A", "B", "C", "D", "E"}};
  big.users = {{"A", "E", 0.1}};
  const TransitionSystem ts5 = build_transition_system(big);
  // A span of m physical hops costs m - 1 swaps however it is assembled.
  CHECK(queue_rank(ts5, "A", "E") == 3);
  CHECK(queue_rank(ts5, "B", "E") == 2);
}

TEST_CASE("rank recurrence is consistent on random topologies") {
  RandomSource rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const TransitionSystem ts = build_transition_system(qsched::testing::random_spec(rng));
    std::vector<char> has_tight(ts.num_queues(), 0);
    for (int t = 0; t < ts.num_transitions(); ++t) {
      const int out = ts.output_queue(t);
      const int ra = ts.rank(ts.input_queue_a(t));
      const int rb = ts.rank(ts.input_queue_b(t));
      CHECK(ts.rank(out) <= 1 + ra + rb);
      CHECK(ts.rank(out) > std::min(ra, rb));
      if (ts.rank(out) == 1 + ra + rb) has_tight[out] = 1;
    }
    for (int q = 0; q < ts.num_queues(); ++q) {
      if (ts.is_physical(q)) {
        CHECK(ts.rank(q) == 0);
      } else {
        CHECK(has_tight[q] == 1);  // some producing transition attains the rank
      }
    }
  }
}

TEST_CASE("identical specs compile to identical systems") {
  const TransitionSystem a = build_transition_system(abcd_spec());
  const TransitionSystem b = build_transition_system(abcd_spec());
  CHECK(a.queues() == b.queues());
  CHECK(a.transitions() == b.transitions());
  CHECK(a.m_tilde() == b.m_tilde());
  CHECK(a.n_tilde() == b.n_tilde());
  CHECK(a.alpha() == b.alpha());
  CHECK(a.beta() == b.beta());
}

TEST_CASE("spec validation names the offending route step") {
  NetworkSpec spec;
  spec.nodes = {"A", "B", "C"};
  spec.edges = {{"A", "B", 1.0}};
  spec.routes = {{"A", "B", "C"}};
  spec.users = {{"A", "C", 0.1}};
  CHECK_THROWS_WITH_AS(build_transition_system(spec),
                       doctest::Contains("(B, C)"), SpecError);

  NetworkSpec no_route = abcd_spec();
  no_route.users.push_back({"A", "C", 0.1});
  CHECK_THROWS_AS(build_transition_system(no_route), SpecError);

  NetworkSpec bad_eta = abcd_spec();
  bad_eta.eta = 0.0;
  CHECK_THROWS_AS(build_transition_system(bad_eta), SpecError);
  bad_eta.eta = 1.5;
  CHECK_THROWS_AS(build_transition_system(bad_eta), SpecError);
}

TEST_CASE("routing restricts transitions to declared service routes") {
  NetworkSpec spec;
  spec.nodes = {"A", "B", "C", "D"};
  spec.edges = {{"A", "B", 1}, {"B", "C", 1}, {"C", "D", 1}};
  spec.routes = {{"A", "B", "C"}, {"B", "C", "D"}};
  spec.users = {{"A", "C", 0.1}, {"B", "D", 0.1}};
  const TransitionSystem ts = build_transition_system(spec);
  // No AD queue: it lies outside every service route.
  CHECK(ts.queue_index(0, 3) == -1);
  CHECK(ts.num_queues() == 5);
  REQUIRE(ts.num_transitions() == 2);
  CHECK(ts.transition_name(0) == "A[B]C");
  CHECK(ts.transition_name(1) == "B[C]D");
}
