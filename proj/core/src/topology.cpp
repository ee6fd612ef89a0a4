#include "qsched/topology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "qsched/errors.hpp"

namespace qsched {

namespace {

QueueKey canonical(int a, int b) {
  return a < b ? QueueKey{a, b} : QueueKey{b, a};
}

}  // namespace

void NetworkSpec::validate() const {
  if (nodes.empty()) throw SpecError("network has no nodes");
  std::set<NodeId> known(nodes.begin(), nodes.end());
  if (known.size() != nodes.size()) throw SpecError("duplicate node identifier");

  std::set<std::pair<NodeId, NodeId>> edge_set;
  for (const auto& e : edges) {
    if (!known.count(e.a) || !known.count(e.b))
      throw SpecError("edge (" + e.a + ", " + e.b + ") references an unknown node");
    if (e.a == e.b) throw SpecError("self-loop edge at node " + e.a);
    if (e.alpha < 0) throw SpecError("negative generation rate on edge (" + e.a + ", " + e.b + ")");
    edge_set.emplace(std::min(e.a, e.b), std::max(e.a, e.b));
  }

  for (const auto& route : routes) {
    if (route.size() < 2) throw SpecError("route with fewer than two nodes");
    for (size_t i = 0; i + 1 < route.size(); ++i) {
      if (!known.count(route[i]) || !known.count(route[i + 1]))
        throw SpecError("route references an unknown node");
      auto key = std::make_pair(std::min(route[i], route[i + 1]),
                                std::max(route[i], route[i + 1]));
      if (!edge_set.count(key))
        throw SpecError("route step (" + route[i] + ", " + route[i + 1] +
                        ") is not a declared physical edge");
    }
  }

  for (const auto& u : users) {
    if (!known.count(u.a) || !known.count(u.b))
      throw SpecError("user pair (" + u.a + ", " + u.b + ") references an unknown node");
    if (u.beta < 0) throw SpecError("negative demand rate for user pair (" + u.a + ", " + u.b + ")");
    bool served = false;
    for (const auto& route : routes) {
      const auto& front = route.front();
      const auto& back = route.back();
      if ((front == u.a && back == u.b) || (front == u.b && back == u.a)) {
        served = true;
        break;
      }
    }
    if (!served)
      throw SpecError("user pair (" + u.a + ", " + u.b + ") is not the endpoint pair of any route");
  }

  if (!(eta > 0.0 && eta <= 1.0)) throw SpecError("eta must lie in (0, 1]");
}

TransitionSystem TransitionSystem::build(const NetworkSpec& spec) {
  spec.validate();

  TransitionSystem ts;
  ts.node_names_ = spec.nodes;
  ts.eta_ = spec.eta;

  std::unordered_map<NodeId, int> node_index;
  for (size_t i = 0; i < spec.nodes.size(); ++i) node_index[spec.nodes[i]] = static_cast<int>(i);

  // Collect queues: physical queues first, in edge declaration order.
  std::map<QueueKey, int> queue_pos;  // canonical pair -> provisional marker
  std::vector<QueueKey> physical_queues;
  std::map<QueueKey, double> alpha_of;
  for (const auto& e : spec.edges) {
    QueueKey key = canonical(node_index.at(e.a), node_index.at(e.b));
    auto [it, inserted] = alpha_of.emplace(key, e.alpha);
    if (!inserted) {
      it->second += e.alpha;  // parallel edge declarations pool their rates
    } else {
      physical_queues.push_back(key);
    }
  }

  // Subpath pairs and position triples of every route, deduplicated.
  std::set<QueueKey> route_pairs;
  std::set<SwapTransition> swap_set;
  for (const auto& route : spec.routes) {
    std::vector<int> path;
    path.reserve(route.size());
    for (const auto& name : route) path.push_back(node_index.at(name));
    const int m = static_cast<int>(path.size());
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        route_pairs.insert(canonical(path[a], path[b]));
        for (int c = b + 1; c < m; ++c) {
          int i = path[a], j = path[b], k = path[c];
          if (i > k) std::swap(i, k);
          swap_set.insert(SwapTransition{i, j, k});
        }
      }
  }

  std::set<QueueKey> physical_set(physical_queues.begin(), physical_queues.end());
  std::vector<QueueKey> virtual_queues;
  for (const auto& key : route_pairs)
    if (!physical_set.count(key)) virtual_queues.push_back(key);

  // Ranks: physical queues are 0; a produced queue costs one swap plus
  // whatever its two inputs cost. Relax to fixpoint; the minimum over
  // producing transitions is the cheapest way to assemble one ebit.
  std::map<QueueKey, int> rank_of;
  constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;
  for (const auto& key : physical_set) rank_of[key] = 0;
  for (const auto& key : virtual_queues) rank_of[key] = kUnreachable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& tr : swap_set) {
      auto in1 = rank_of.find(canonical(tr.i, tr.j));
      auto in2 = rank_of.find(canonical(tr.j, tr.k));
      if (in1 == rank_of.end() || in2 == rank_of.end()) continue;
      auto& out = rank_of.at(canonical(tr.i, tr.k));
      int candidate = 1 + in1->second + in2->second;
      if (in1->second >= kUnreachable || in2->second >= kUnreachable) candidate = kUnreachable;
      if (candidate < out) {
        out = candidate;
        changed = true;
      }
    }
  }
  for (const auto& [key, r] : rank_of)
    if (r >= kUnreachable)
      throw SpecError("queue " + spec.nodes[key.u] + "-" + spec.nodes[key.v] +
                      " has no producing transition");

  std::sort(virtual_queues.begin(), virtual_queues.end(),
            [&](const QueueKey& x, const QueueKey& y) {
              return std::make_tuple(rank_of.at(x), x.u, x.v) <
                     std::make_tuple(rank_of.at(y), y.u, y.v);
            });

  ts.queues_ = physical_queues;
  ts.queues_.insert(ts.queues_.end(), virtual_queues.begin(), virtual_queues.end());
  const int nq = static_cast<int>(ts.queues_.size());
  for (int q = 0; q < nq; ++q) queue_pos[ts.queues_[q]] = q;

  ts.physical_.assign(nq, 0);
  ts.ranks_.assign(nq, 0);
  for (int q = 0; q < nq; ++q) {
    ts.physical_[q] = physical_set.count(ts.queues_[q]) ? 1 : 0;
    ts.ranks_[q] = rank_of.count(ts.queues_[q]) ? rank_of.at(ts.queues_[q]) : 0;
  }

  ts.transitions_.assign(swap_set.begin(), swap_set.end());
  std::sort(ts.transitions_.begin(), ts.transitions_.end(),
            [&](const SwapTransition& x, const SwapTransition& y) {
              return std::make_tuple(rank_of.at(canonical(x.i, x.k)), x.i, x.j, x.k) <
                     std::make_tuple(rank_of.at(canonical(y.i, y.k)), y.i, y.j, y.k);
            });
  const int nt = static_cast<int>(ts.transitions_.size());

  ts.in_a_.resize(nt);
  ts.in_b_.resize(nt);
  ts.out_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tr = ts.transitions_[t];
    ts.in_a_[t] = queue_pos.at(canonical(tr.i, tr.j));
    ts.in_b_[t] = queue_pos.at(canonical(tr.j, tr.k));
    ts.out_[t] = queue_pos.at(canonical(tr.i, tr.k));
  }

  const int dim = nt + nq;
  ts.m_tilde_ = Eigen::MatrixXi::Zero(nq, dim);
  ts.n_tilde_ = Eigen::MatrixXi::Zero(nq, dim);
  for (int t = 0; t < nt; ++t) {
    ts.m_tilde_(ts.in_a_[t], t) -= 1;
    ts.m_tilde_(ts.in_b_[t], t) -= 1;
    ts.m_tilde_(ts.out_[t], t) += 1;
  }
  for (int q = 0; q < nq; ++q) {
    ts.m_tilde_(q, nt + q) = -1;
    ts.n_tilde_(q, nt + q) = -1;
  }

  ts.alpha_ = Eigen::VectorXd::Zero(nq);
  for (const auto& [key, a] : alpha_of) ts.alpha_[queue_pos.at(key)] = a;

  ts.user_pair_.assign(nq, 0);
  ts.beta_ = Eigen::VectorXd::Zero(nq);
  for (const auto& u : spec.users) {
    QueueKey key = canonical(node_index.at(u.a), node_index.at(u.b));
    int q = queue_pos.at(key);  // validate() guarantees a route, hence a queue
    ts.user_pair_[q] = 1;
    ts.beta_[q] += u.beta;
  }

  ts.incident_.assign(spec.nodes.size(), {});
  for (int q = 0; q < nq; ++q) {
    ts.incident_[ts.queues_[q].u].push_back(q);
    ts.incident_[ts.queues_[q].v].push_back(q);
  }

  return ts;
}

int TransitionSystem::queue_index(int node_u, int node_v) const {
  QueueKey key = canonical(node_u, node_v);
  for (int q = 0; q < num_queues(); ++q)
    if (queues_[q] == key) return q;
  return -1;
}

int TransitionSystem::node_index(const NodeId& name) const {
  for (int i = 0; i < num_nodes(); ++i)
    if (node_names_[i] == name) return i;
  throw SpecError("unknown node: " + name);
}

int TransitionSystem::queue_index(const NodeId& a, const NodeId& b) const {
  int q = queue_index(node_index(a), node_index(b));
  if (q < 0) throw SpecError("no queue for pair (" + a + ", " + b + ")");
  return q;
}

std::string TransitionSystem::queue_name(int queue) const {
  const auto& key = queues_[queue];
  const auto& nu = node_names_[key.u];
  const auto& nv = node_names_[key.v];
  if (nu.size() == 1 && nv.size() == 1) return nu + nv;
  return nu + "-" + nv;
}

std::string TransitionSystem::transition_name(int transition) const {
  const auto& tr = transitions_[transition];
  return node_names_[tr.i] + "[" + node_names_[tr.j] + "]" + node_names_[tr.k];
}

TransitionSystem build_transition_system(const NetworkSpec& spec) {
  return TransitionSystem::build(spec);
}

int queue_rank(const TransitionSystem& ts, const NodeId& a, const NodeId& b) {
  return ts.rank(ts.queue_index(a, b));
}

}  // namespace qsched
