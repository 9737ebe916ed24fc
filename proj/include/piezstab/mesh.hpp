#pragma once

#include "piezstab/params.hpp"

#include <vector>

namespace piezstab {

/// Conforming 1D mesh over the layered interval: uniform elements within
/// each layer, interface coordinates hit exactly by shared nodes.
struct Mesh {
    Variant variant = Variant::PE;
    std::vector<int> n_per_layer;
    std::vector<double> layer_lo, layer_hi;
    std::vector<double> h;           // element size per layer
    std::vector<double> nodes;       // global chain of node coordinates
    std::vector<int> layer_begin;    // index of each layer's first node

    int layers() const { return static_cast<int>(n_per_layer.size()); }
    int node_count() const { return static_cast<int>(nodes.size()); }
    /// Global node index sitting at interface k (k = 0 is the first interface).
    int interface_node(int k) const { return layer_begin[static_cast<std::size_t>(k) + 1]; }
    double min_h() const;
};

/// n_per_layer must have one entry per layer (3 for EPE, 2 for PE).
Mesh build_mesh(const SystemConfig& config, const std::vector<int>& n_per_layer);

}  // namespace piezstab
