#pragma once

/// Cyclic tours over an Instance and the 2-opt move primitives: gain
/// evaluation and application by segment reversal.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "twopt/instance.hpp"

namespace twopt {

/// Permutation of {0..n-1} read cyclically (position n wraps to 0), with the
/// inverse node -> position map kept in sync. Mutable and single-owner;
/// concurrent runs must operate on copies.
class Tour {
  public:
    explicit Tour(std::vector<int> order);
    static Tour identity(int n);

    int n() const { return static_cast<int>(order_.size()); }
    const std::vector<int>& order() const { return order_; }
    int node_at(int pos) const { return order_[static_cast<std::size_t>(pos)]; }
    int succ_at(int pos) const {
        return order_[static_cast<std::size_t>(pos + 1 == n() ? 0 : pos + 1)];
    }
    int position_of(int node) const { return position_[static_cast<std::size_t>(node)]; }

    /// Reverses positions first..last inclusive and fixes the inverse map.
    void reverse_segment(int first, int last);

  private:
    std::vector<int> order_;
    std::vector<int> position_;
};

/// Uniformly random permutation (unbiased shuffle), deterministic per seed.
Tour random_tour(int n, std::uint64_t seed);

/// A 2-opt move: remove tour edges at positions i and j, reconnect crosswise.
struct Move {
    int i = 0;
    int j = 0;
    double gain = 0.0;
};

/// The pair (i,j) removes edges sharing a node, so the move is a no-op.
inline bool is_degenerate_pair(int n, int i, int j) {
    return j == i + 1 || (i == 0 && j == n - 1);
}

double tour_length(const Instance& inst, const Tour& tour);

/// Gain of move (i,j), 0 <= i < j < n: old edge costs minus new edge costs.
/// Degenerate pairs evaluate to exactly 0 and are never improving.
double move_gain(const Instance& inst, const Tour& tour, int i, int j);

/// Reverses the segment between the removed edges. Throws on degenerate or
/// out-of-range pairs.
void apply_move(Tour& tour, int i, int j);

/// Newline-separated node list, 1-based labels.
void write_tour(const Tour& tour, std::ostream& out);
Tour read_tour(std::istream& in);

} // namespace twopt
