#include "scot/matching.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace scot {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("iou threshold must lie in (0, 1)");
  }
}

// ---------------------------------------------------------------------------
// Exact max-weight bipartite matching via successive shortest augmenting
// paths (min-cost flow with Johnson potentials). Costs are shifted by the
// largest edge weight so every arc is non-negative: a real match costs
// max_w - w, and each left node owns a private sink costing max_w, so
// staying unmatched is the most expensive choice. Every unit flows over
// exactly one left->right arc, making the shift rank-preserving. All
// unmatched rights (and sinks) drain into one conceptual super-sink whose
// distance is tracked with proper reduced costs, so paths ending at
// different targets stay comparable. With weights 1 + iou*eps the optimum
// is the maximum-cardinality matching with the largest IOU sum.
// ---------------------------------------------------------------------------

struct LocalEdge {
  int left = 0;
  int right = 0;
  double weight = 0.0;
};

struct SolveResult {
  std::vector<int> match_left;  // right index per left node, -1 if unmatched
};

SolveResult solve_max_weight(int n_left, int n_right,
                             const std::vector<LocalEdge>& edges) {
  const int n_right_total = n_right + n_left;  // real rights + private sinks

  double max_weight = 0.0;
  for (const LocalEdge& e : edges) {
    max_weight = std::max(max_weight, e.weight);
  }

  std::vector<std::vector<std::pair<int, double>>> adj(n_left);
  for (const LocalEdge& e : edges) {
    adj[e.left].push_back({e.right, max_weight - e.weight});
  }
  for (int l = 0; l < n_left; ++l) {
    adj[l].push_back({n_right + l, max_weight});
  }

  std::vector<double> phi_left(n_left, 0.0);
  std::vector<double> phi_right(n_right_total, 0.0);
  double phi_sink = 0.0;

  std::vector<int> match_left(n_left, -1);
  std::vector<int> match_right(n_right_total, -1);

  std::vector<double> dist_left(n_left), dist_right(n_right_total);
  std::vector<int> prev_left_of_right(n_right_total);
  using HeapItem = std::pair<double, int>;  // (dist, node); right nodes offset by n_left
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;

  for (int source = 0; source < n_left; ++source) {
    std::fill(dist_left.begin(), dist_left.end(), kInf);
    std::fill(dist_right.begin(), dist_right.end(), kInf);
    while (!heap.empty()) heap.pop();

    dist_left[source] = 0.0;
    heap.push({0.0, source});
    int target = -1;
    double sink_dist = kInf;  // reduced distance of the super-sink

    while (!heap.empty()) {
      auto [d, node] = heap.top();
      heap.pop();
      // the drain arcs below have non-negative reduced cost, so no
      // remaining heap entry can improve on a settled super-sink
      if (d >= sink_dist) break;
      if (node < n_left) {
        int l = node;
        if (d > dist_left[l]) continue;
        for (auto [r, cost] : adj[l]) {
          double nd = d + cost + phi_left[l] - phi_right[r];
          if (nd < dist_right[r]) {
            dist_right[r] = nd;
            prev_left_of_right[r] = l;
            heap.push({nd, n_left + r});
          }
        }
      } else {
        int r = node - n_left;
        if (d > dist_right[r]) continue;
        if (match_right[r] == -1) {
          double through = d + phi_right[r] - phi_sink;
          if (through < sink_dist) {
            sink_dist = through;
            target = r;
          }
        } else {
          int l = match_right[r];
          // matched arcs are tight, so the reversed reduced cost is zero
          if (d < dist_left[l]) {
            dist_left[l] = d;
            heap.push({d, l});
          }
        }
      }
    }

    assert(target != -1);  // the private sink is always reachable

    for (int l = 0; l < n_left; ++l) {
      phi_left[l] += std::min(dist_left[l], sink_dist);
    }
    for (int r = 0; r < n_right_total; ++r) {
      phi_right[r] += std::min(dist_right[r], sink_dist);
    }
    phi_sink += sink_dist;

    // flip matches along the augmenting path
    int r = target;
    while (true) {
      int l = prev_left_of_right[r];
      int next_r = match_left[l];
      match_left[l] = r;
      match_right[r] = l;
      if (l == source) break;
      r = next_r;
    }
  }

  for (int l = 0; l < n_left; ++l) {
    if (match_left[l] >= n_right) match_left[l] = -1;  // sink = unmatched
  }
  return SolveResult{std::move(match_left)};
}

// Solves one candidate subgraph given in global indices. Returns pairs
// sorted by (gt, prop) plus the IOU sum accumulated in that order.
struct SubSolution {
  std::vector<CandidatePair> pairs;
  double iou_sum = 0.0;
};

SubSolution solve_subgraph(const std::vector<CandidatePair>& edges,
                           double weight_eps) {
  SubSolution out;
  if (edges.empty()) return out;

  std::unordered_map<int, int> left_ids, right_ids;
  std::vector<int> left_back, right_back;
  auto intern = [](std::unordered_map<int, int>& ids, std::vector<int>& back,
                   int key) {
    auto [it, inserted] = ids.try_emplace(key, static_cast<int>(back.size()));
    if (inserted) back.push_back(key);
    return it->second;
  };

  std::vector<LocalEdge> local;
  local.reserve(edges.size());
  std::vector<double> edge_iou;
  edge_iou.reserve(edges.size());
  for (const CandidatePair& e : edges) {
    LocalEdge le;
    le.left = intern(left_ids, left_back, e.gt_index);
    le.right = intern(right_ids, right_back, e.prop_index);
    le.weight = 1.0 + e.iou * weight_eps;
    local.push_back(le);
    edge_iou.push_back(e.iou);
  }

  SolveResult solved = solve_max_weight(static_cast<int>(left_back.size()),
                                        static_cast<int>(right_back.size()), local);

  // recover pair IOUs from the edge list
  std::unordered_map<long long, double> iou_of;
  for (std::size_t i = 0; i < local.size(); ++i) {
    iou_of[(static_cast<long long>(local[i].left) << 32) | local[i].right] =
        edge_iou[i];
  }
  for (int l = 0; l < static_cast<int>(left_back.size()); ++l) {
    int r = solved.match_left[l];
    if (r < 0) continue;
    CandidatePair p;
    p.gt_index = left_back[l];
    p.prop_index = right_back[r];
    p.iou = iou_of.at((static_cast<long long>(l) << 32) | r);
    out.pairs.push_back(p);
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const auto& a, const auto& b) {
    return std::pair{a.gt_index, a.prop_index} < std::pair{b.gt_index, b.prop_index};
  });
  for (const CandidatePair& p : out.pairs) out.iou_sum += p.iou;
  return out;
}

// Greedy lexicographic refinement: among all matchings that reach the
// component's optimal cardinality and IOU sum, pick the one whose
// sorted pair list is smallest. Each candidate edge is kept iff forcing
// it still allows the optimum; edges arrive in (gt, prop) order.
std::vector<CandidatePair> refine_lexicographic(
    const std::vector<CandidatePair>& edges, const SubSolution& base,
    double weight_eps) {
  const std::size_t cardinality = base.pairs.size();
  if (edges.size() == cardinality) {
    return base.pairs;  // every edge is matched; the optimum is unique
  }

  std::vector<CandidatePair> forced;
  double forced_sum = 0.0;
  std::unordered_map<int, bool> used_gt, used_prop;

  for (const CandidatePair& e : edges) {
    if (forced.size() == cardinality) break;
    if (used_gt.count(e.gt_index) || used_prop.count(e.prop_index)) continue;

    std::vector<CandidatePair> rest;
    rest.reserve(edges.size());
    for (const CandidatePair& other : edges) {
      if (used_gt.count(other.gt_index) || used_prop.count(other.prop_index))
        continue;
      if (other.gt_index == e.gt_index || other.prop_index == e.prop_index)
        continue;
      rest.push_back(other);
    }
    SubSolution sub = solve_subgraph(rest, weight_eps);

    bool keeps_cardinality = forced.size() + 1 + sub.pairs.size() == cardinality;
    bool keeps_sum = std::abs(forced_sum + e.iou + sub.iou_sum - base.iou_sum) <=
                     kIouSumTolerance;
    if (keeps_cardinality && keeps_sum) {
      forced.push_back(e);
      forced_sum += e.iou;
      used_gt[e.gt_index] = true;
      used_prop[e.prop_index] = true;
    }
  }

  assert(forced.size() == cardinality);
  return forced;
}

// Union-find over frame indices: gt i -> node i, prop j -> node gt_count+j.
struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<CandidatePair> candidate_pairs(
    std::span<const ValidatedPolygon> gt, std::span<const ValidatedPolygon> props,
    double threshold) {
  check_threshold(threshold);
  std::vector<CandidatePair> out;
  if (gt.empty() || props.empty()) return out;

  double dim_sum = 0.0;
  for (const auto& p : props) {
    dim_sum += std::max(p.bbox().width(), p.bbox().height());
  }
  for (const auto& g : gt) {
    dim_sum += std::max(g.bbox().width(), g.bbox().height());
  }
  const double cell = std::max(dim_sum / static_cast<double>(gt.size() + props.size()),
                               1e-9);

  auto cell_range = [cell](const BoundingBox& b) {
    return std::array<long long, 4>{
        static_cast<long long>(std::floor(b.min_x / cell)),
        static_cast<long long>(std::floor(b.min_y / cell)),
        static_cast<long long>(std::floor(b.max_x / cell)),
        static_cast<long long>(std::floor(b.max_y / cell))};
  };

  std::unordered_map<long long, std::vector<int>> grid;
  for (int j = 0; j < static_cast<int>(props.size()); ++j) {
    auto [cx0, cy0, cx1, cy1] = cell_range(props[j].bbox());
    for (long long cy = cy0; cy <= cy1; ++cy) {
      for (long long cx = cx0; cx <= cx1; ++cx) {
        grid[(cx << 32) ^ (cy & 0xffffffffLL)].push_back(j);
      }
    }
  }

  std::vector<int> last_seen(props.size(), -1);
  for (int i = 0; i < static_cast<int>(gt.size()); ++i) {
    auto [cx0, cy0, cx1, cy1] = cell_range(gt[i].bbox());
    for (long long cy = cy0; cy <= cy1; ++cy) {
      for (long long cx = cx0; cx <= cx1; ++cx) {
        auto it = grid.find((cx << 32) ^ (cy & 0xffffffffLL));
        if (it == grid.end()) continue;
        for (int j : it->second) {
          if (last_seen[j] == i) continue;
          last_seen[j] = i;
          if (!gt[i].bbox().overlaps(props[j].bbox())) continue;
          double v = iou(gt[i], props[j]);
          if (v >= threshold) {
            out.push_back(CandidatePair{i, j, v});
          }
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair{a.gt_index, a.prop_index} < std::pair{b.gt_index, b.prop_index};
  });
  return out;
}

MatchResult match_candidates(int gt_count, int prop_count,
                             std::span<const CandidatePair> candidates) {
  // one extra match always outweighs any possible IOU sum
  const double weight_eps =
      1.0 / (static_cast<double>(std::min(gt_count, prop_count)) + 1.0);

  DisjointSets sets(gt_count + prop_count);
  for (const CandidatePair& e : candidates) {
    sets.unite(e.gt_index, gt_count + e.prop_index);
  }
  std::unordered_map<int, std::vector<CandidatePair>> components;
  for (const CandidatePair& e : candidates) {
    components[sets.find(e.gt_index)].push_back(e);
  }

  std::vector<int> roots;
  roots.reserve(components.size());
  for (const auto& [root, _] : components) roots.push_back(root);
  std::sort(roots.begin(), roots.end());

  MatchResult result;
  for (int root : roots) {
    const std::vector<CandidatePair>& edges = components[root];
    SubSolution base = solve_subgraph(edges, weight_eps);
    std::vector<CandidatePair> chosen =
        refine_lexicographic(edges, base, weight_eps);
    for (const CandidatePair& p : chosen) {
      result.pairs.push_back(MatchedPair{p.gt_index, p.prop_index, p.iou});
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end(),
            [](const auto& a, const auto& b) {
              return std::pair{a.gt_index, a.prop_index} <
                     std::pair{b.gt_index, b.prop_index};
            });

  std::vector<bool> gt_used(gt_count, false), prop_used(prop_count, false);
  for (const MatchedPair& p : result.pairs) {
    gt_used[p.gt_index] = true;
    prop_used[p.prop_index] = true;
  }
  for (int i = 0; i < gt_count; ++i) {
    if (!gt_used[i]) result.unmatched_gt.push_back(i);
  }
  for (int j = 0; j < prop_count; ++j) {
    if (!prop_used[j]) result.unmatched_prop.push_back(j);
  }
  return result;
}

MatchResult match_frame(std::span<const ValidatedPolygon> gt,
                        std::span<const ValidatedPolygon> props,
                        double threshold) {
  std::vector<CandidatePair> candidates = candidate_pairs(gt, props, threshold);
  return match_candidates(static_cast<int>(gt.size()),
                          static_cast<int>(props.size()), candidates);
}

}  // namespace scot
