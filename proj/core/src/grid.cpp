#include "hgraph/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hgraph {

std::shared_ptr<const GridDomain> GridDomain::create(int n,
                                                     std::vector<double> lo,
                                                     std::vector<double> hi,
                                                     std::vector<int> m) {
  if (n < 1) throw std::invalid_argument("GridDomain: n must be >= 1");
  const size_t d = static_cast<size_t>(2 * n);
  if (lo.size() != d || hi.size() != d || m.size() != d) {
    throw std::invalid_argument("GridDomain: lo/hi/m must have length 2n = " + std::to_string(d));
  }
  auto g = std::shared_ptr<GridDomain>(new GridDomain());
  g->n_ = n;
  g->lo_ = std::move(lo);
  g->hi_ = std::move(hi);
  g->m_ = std::move(m);
  g->h_.resize(d);
  g->strides_.resize(d);
  NodeIndex total = 1;
  for (size_t k = 0; k < d; ++k) {
    if (g->m_[k] < 3) throw std::invalid_argument("GridDomain: need at least 3 nodes per axis");
    if (!(g->hi_[k] > g->lo_[k])) throw std::invalid_argument("GridDomain: hi must exceed lo on every axis");
    g->h_[k] = (g->hi_[k] - g->lo_[k]) / static_cast<double>(g->m_[k] - 1);
    g->strides_[k] = total;
    total *= g->m_[k];
  }
  g->num_nodes_ = total;

  g->boundary_mask_.assign(static_cast<size_t>(total), false);
  g->quad_.resize(total);
  g->coords_.resize(d);
  for (size_t k = 0; k < d; ++k) g->coords_[k].resize(total);

  double cell = 1.0, box = 1.0;
  for (size_t k = 0; k < d; ++k) {
    cell *= g->h_[k];
    box *= g->hi_[k] - g->lo_[k];
  }
  g->cell_volume_ = cell;
  g->box_volume_ = box;

  g->interior_rank_.assign(static_cast<size_t>(total), -1);
  std::vector<int> multi(d, 0);
  for (NodeIndex x = 0; x < total; ++x) {
    bool bd = false;
    double w = 1.0;
    for (size_t k = 0; k < d; ++k) {
      const int i = static_cast<int>((x / g->strides_[k]) % g->m_[k]);
      multi[k] = i;
      const bool edge = (i == 0 || i == g->m_[k] - 1);
      bd = bd || edge;
      w *= edge ? 0.5 * g->h_[k] : g->h_[k];
      g->coords_[k][x] = g->lo_[k] + g->h_[k] * i;
    }
    g->boundary_mask_[static_cast<size_t>(x)] = bd;
    g->quad_[x] = w;
    if (bd) {
      g->interior_rank_[static_cast<size_t>(x)] = -1 - static_cast<NodeIndex>(g->boundary_.size());
      g->boundary_.push_back(x);
    } else {
      g->interior_rank_[static_cast<size_t>(x)] = static_cast<NodeIndex>(g->interior_.size());
      g->interior_.push_back(x);
    }
  }
  return g;
}

std::shared_ptr<const GridDomain> GridDomain::unit_box(int n, int m) {
  const size_t d = static_cast<size_t>(2 * n);
  return create(n, std::vector<double>(d, 0.0), std::vector<double>(d, 1.0), std::vector<int>(d, m));
}

NodeIndex GridDomain::flat_index(const std::vector<int>& multi) const {
  if (multi.size() != static_cast<size_t>(dim())) {
    throw std::invalid_argument("GridDomain::flat_index: wrong multi-index length");
  }
  NodeIndex x = 0;
  for (size_t k = 0; k < multi.size(); ++k) {
    if (multi[k] < 0 || multi[k] >= m_[k]) throw std::out_of_range("GridDomain::flat_index: index out of range");
    x += strides_[k] * multi[k];
  }
  return x;
}

void GridDomain::unravel(NodeIndex flat, std::vector<int>& multi) const {
  multi.resize(static_cast<size_t>(dim()));
  for (size_t k = 0; k < multi.size(); ++k) {
    multi[k] = static_cast<int>((flat / strides_[k]) % m_[k]);
  }
}

std::vector<double> GridDomain::node(NodeIndex flat) const {
  std::vector<double> x(static_cast<size_t>(dim()));
  for (size_t k = 0; k < x.size(); ++k) x[k] = coordinate(flat, static_cast<int>(k));
  return x;
}

double GridDomain::max_spacing() const {
  double h = 0.0;
  for (double v : h_) h = std::max(h, v);
  return h;
}

bool GridDomain::same_layout(const GridDomain& other) const {
  return n_ == other.n_ && m_ == other.m_ && lo_ == other.lo_ && hi_ == other.hi_;
}

}  // namespace hgraph
