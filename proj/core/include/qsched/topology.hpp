#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qsched {

using NodeId = std::string;

struct EdgeSpec {
  NodeId a;
  NodeId b;
  double alpha = 0.0;  // mean ebits generated per time step
};

struct UserSpec {
  NodeId a;
  NodeId b;
  double beta = 0.0;  // mean requests per time step
};

/// Declarative description of a switching network: nodes, fibered edges,
/// service routes and user pairs. Rates are per time step.
struct NetworkSpec {
  std::vector<NodeId> nodes;
  std::vector<EdgeSpec> edges;
  std::vector<std::vector<NodeId>> routes;
  std::vector<UserSpec> users;
  double eta = 1.0;  // per-step memory survival probability, in (0, 1]

  /// Throws SpecError if any invariant is violated: a route step that is not
  /// a declared edge, a user pair that no route serves, negative rates, or
  /// eta outside (0, 1].
  void validate() const;
};

/// Unordered node pair in canonical form (u < v, indices into the node list).
struct QueueKey {
  int u = -1;
  int v = -1;
  friend bool operator==(const QueueKey&, const QueueKey&) = default;
  friend auto operator<=>(const QueueKey&, const QueueKey&) = default;
};

/// Swap transition i[j]k: consumes queues (i,j) and (j,k), produces (i,k).
/// Canonical form has i < k; j is the node performing the measurement.
struct SwapTransition {
  int i = -1;
  int j = -1;
  int k = -1;
  friend bool operator==(const SwapTransition&, const SwapTransition&) = default;
  friend auto operator<=>(const SwapTransition&, const SwapTransition&) = default;
};

/// The compiled form of a NetworkSpec: queue and transition index spaces,
/// the extended incidence matrices, per-queue ranks and mean-rate vectors.
///
/// Layout of a decision vector r (length decision_dim()):
///   r[0 .. num_transitions)                 swap counts, transition order
///   r[num_transitions .. decision_dim())    consumption counts, queue order
///
/// Queue order: physical queues in edge declaration order, then virtual
/// queues by (rank, endpoints). Transition order: (rank of output, i, j, k).
/// The ordering is part of the contract; golden tests depend on it.
class TransitionSystem {
 public:
  static TransitionSystem build(const NetworkSpec& spec);

  int num_nodes() const { return static_cast<int>(node_names_.size()); }
  int num_queues() const { return static_cast<int>(queues_.size()); }
  int num_transitions() const { return static_cast<int>(transitions_.size()); }
  int decision_dim() const { return num_transitions() + num_queues(); }

  const std::vector<QueueKey>& queues() const { return queues_; }
  const std::vector<SwapTransition>& transitions() const { return transitions_; }

  bool is_physical(int queue) const { return physical_[queue] != 0; }
  bool is_user_pair(int queue) const { return user_pair_[queue] != 0; }

  /// Minimum number of swap operations needed to place one ebit in this
  /// queue starting from an empty network. Zero for physical queues.
  int rank(int queue) const { return ranks_[queue]; }

  /// Queue index for the pair (a, b) in either endpoint order.
  /// Throws SpecError if the pair has no queue.
  int queue_index(const NodeId& a, const NodeId& b) const;
  int queue_index(int node_u, int node_v) const;  // -1 if absent

  int node_index(const NodeId& name) const;  // throws SpecError if unknown

  /// N_queues x decision_dim, [M | -I]. Swap columns have -1 on the two
  /// consumed queues and +1 on the produced one; every column sums to -1.
  const Eigen::MatrixXi& m_tilde() const { return m_tilde_; }
  /// N_queues x decision_dim, [0 | -I].
  const Eigen::MatrixXi& n_tilde() const { return n_tilde_; }

  /// Mean generation rate per queue; zero on virtual queues.
  const Eigen::VectorXd& alpha() const { return alpha_; }
  /// Mean demand rate per queue; zero on non-user pairs.
  const Eigen::VectorXd& beta() const { return beta_; }
  double eta() const { return eta_; }

  /// Queues (physical and virtual) incident to a node.
  const std::vector<int>& incident_queues(int node) const { return incident_[node]; }

  /// Queue indices of the two consumed queues / produced queue per transition.
  int input_queue_a(int transition) const { return in_a_[transition]; }
  int input_queue_b(int transition) const { return in_b_[transition]; }
  int output_queue(int transition) const { return out_[transition]; }

  const NodeId& node_name(int node) const { return node_names_[node]; }
  std::string queue_name(int queue) const;
  std::string transition_name(int transition) const;

 private:
  std::vector<NodeId> node_names_;
  std::vector<QueueKey> queues_;
  std::vector<SwapTransition> transitions_;
  std::vector<char> physical_;
  std::vector<char> user_pair_;
  std::vector<int> ranks_;
  std::vector<int> in_a_, in_b_, out_;
  std::vector<std::vector<int>> incident_;
  Eigen::MatrixXi m_tilde_;
  Eigen::MatrixXi n_tilde_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd beta_;
  double eta_ = 1.0;
};

/// Compiles a validated NetworkSpec. See TransitionSystem for the ordering
/// and matrix conventions.
TransitionSystem build_transition_system(const NetworkSpec& spec);

/// Rank lookup by endpoint names. Throws SpecError for unknown queues.
int queue_rank(const TransitionSystem& ts, const NodeId& a, const NodeId& b);

}  // namespace qsched
