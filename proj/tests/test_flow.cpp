#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace fairmsr;

TEST(MaxFlow, SmallNetwork) {
  FlowNetwork net(4, 0, 3);
  const auto a = net.add_edge(0, 1, 3);
  net.add_edge(0, 2, 2);
  net.add_edge(1, 2, 1);
  net.add_edge(1, 3, 2);
  const auto c = net.add_edge(2, 3, 3);
  const auto f = max_flow(net);
  EXPECT_EQ(f.value, 5);
  EXPECT_EQ(f.edge_flow[a], 3);
  EXPECT_EQ(f.edge_flow[c], 3);
}

TEST(MaxFlow, ConservationAndCapacity) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(7);
    FlowNetwork net(n, 0, n - 1);
    for (std::size_t e = 0; e < 3 * n; ++e) {
      net.add_edge(rng.index(n), rng.index(n), static_cast<std::int64_t>(rng.index(5)));
    }
    const auto f = max_flow(net);
    std::vector<std::int64_t> balance(n, 0);
    for (std::size_t e = 0; e < net.edges().size(); ++e) {
      const auto& edge = net.edges()[e];
      ASSERT_GE(f.edge_flow[e], 0);
      ASSERT_LE(f.edge_flow[e], edge.capacity);
      balance[edge.from] -= f.edge_flow[e];
      balance[edge.to] += f.edge_flow[e];
    }
    for (std::size_t v = 1; v + 1 < n; ++v) EXPECT_EQ(balance[v], 0);
    EXPECT_EQ(balance[n - 1], f.value);
  }
}

TEST(MaxFlow, MatchingAgreesWithBruteForce) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t left = 1 + rng.index(6), right = 1 + rng.index(6);
    std::vector<std::vector<bool>> adj(left, std::vector<bool>(right));
    FlowNetwork net(left + right + 2, 0, left + right + 1);
    for (std::size_t u = 0; u < left; ++u) net.add_edge(0, 1 + u, 1);
    for (std::size_t v = 0; v < right; ++v) net.add_edge(1 + left + v, left + right + 1, 1);
    for (std::size_t u = 0; u < left; ++u) {
      for (std::size_t v = 0; v < right; ++v) {
        adj[u][v] = rng.between(0, 2) == 0;
        if (adj[u][v]) net.add_edge(1 + u, 1 + left + v, 1);
      }
    }
    EXPECT_EQ(static_cast<std::size_t>(max_flow(net).value), exact_matching(adj));
  }
}

TEST(MaxFlow, Contracts) {
  EXPECT_THROW(FlowNetwork(2, 0, 0), ContractViolation);
  FlowNetwork net(2, 0, 1);
  EXPECT_THROW(net.add_edge(0, 2, 1), ContractViolation);
  EXPECT_THROW(net.add_edge(0, 1, -1), ContractViolation);
  EXPECT_EQ(max_flow(net).value, 0);
}

TEST(ExactMatching, Guard) {
  std::vector<std::vector<bool>> adj(7, std::vector<bool>(2, true));
  EXPECT_THROW(exact_matching(adj), GuardExceeded);
}
