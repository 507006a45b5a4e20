#include "twopt/tour.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "twopt/rng.hpp"

namespace twopt {

Tour::Tour(std::vector<int> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    if (n < 4)
        throw std::invalid_argument("tour needs at least 4 nodes");
    position_.assign(static_cast<std::size_t>(n), -1);
    for (int pos = 0; pos < n; ++pos) {
        const int node = order_[static_cast<std::size_t>(pos)];
        if (node < 0 || node >= n || position_[static_cast<std::size_t>(node)] != -1)
            throw std::invalid_argument("tour order is not a permutation");
        position_[static_cast<std::size_t>(node)] = pos;
    }
}

Tour Tour::identity(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return Tour(std::move(order));
}

void Tour::reverse_segment(int first, int last) {
    std::reverse(order_.begin() + first, order_.begin() + last + 1);
    for (int pos = first; pos <= last; ++pos)
        position_[static_cast<std::size_t>(order_[static_cast<std::size_t>(pos)])] = pos;
}

Tour random_tour(int n, std::uint64_t seed) {
    if (n < 4)
        throw std::invalid_argument("tour needs at least 4 nodes");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    shuffle(order, rng);
    return Tour(std::move(order));
}

double tour_length(const Instance& inst, const Tour& tour) {
    const int n = tour.n();
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        total += inst.cost(tour.node_at(i), tour.succ_at(i));
    return total;
}

namespace {

void check_pair(int n, int i, int j) {
    if (i < 0 || j >= n || i >= j)
        throw std::out_of_range("move positions must satisfy 0 <= i < j < n");
}

} // namespace

double move_gain(const Instance& inst, const Tour& tour, int i, int j) {
    check_pair(tour.n(), i, j);
    if (is_degenerate_pair(tour.n(), i, j))
        return 0.0;
    const int u0 = tour.node_at(i), u1 = tour.succ_at(i);
    const int v0 = tour.node_at(j), v1 = tour.succ_at(j);
    return inst.cost(u0, u1) + inst.cost(v0, v1) - inst.cost(u0, v0) - inst.cost(u1, v1);
}

void apply_move(Tour& tour, int i, int j) {
    check_pair(tour.n(), i, j);
    if (is_degenerate_pair(tour.n(), i, j))
        throw std::invalid_argument("degenerate move rejected");
    tour.reverse_segment(i + 1, j);
}

void write_tour(const Tour& tour, std::ostream& out) {
    for (int node : tour.order())
        out << (node + 1) << '\n';
}

Tour read_tour(std::istream& in) {
    std::vector<int> order;
    int label = 0;
    while (in >> label)
        order.push_back(label - 1);
    return Tour(std::move(order));
}

} // namespace twopt
