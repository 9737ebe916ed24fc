#include "piezstab/mesh.hpp"

#include <algorithm>

namespace piezstab {

double Mesh::min_h() const { return *std::min_element(h.begin(), h.end()); }

Mesh build_mesh(const SystemConfig& config, const std::vector<int>& n_per_layer) {
    const Geometry& g = config.geometry;
    const int expect = (g.variant == Variant::EPE) ? 3 : 2;
    if (static_cast<int>(n_per_layer.size()) != expect)
        throw std::invalid_argument("build_mesh: expected " + std::to_string(expect) +
                                    " per-layer element counts for " + variant_name(g.variant));
    for (int n : n_per_layer)
        if (n < 1) throw std::invalid_argument("build_mesh: element counts must be >= 1");

    std::vector<Rational> bounds;
    if (g.variant == Variant::EPE)
        bounds = {Rational(0), g.l1.exact, g.l2.exact, g.L.exact};
    else
        bounds = {Rational(0), g.l1.exact, g.L.exact};

    Mesh mesh;
    mesh.variant = g.variant;
    mesh.n_per_layer = n_per_layer;
    for (std::size_t layer = 0; layer + 1 < bounds.size(); ++layer) {
        const Rational lo = bounds[layer], hi = bounds[layer + 1];
        const int n = n_per_layer[layer];
        mesh.layer_lo.push_back(to_double(lo));
        mesh.layer_hi.push_back(to_double(hi));
        mesh.h.push_back(to_double((hi - lo) / n));
        // interface nodes are shared: a layer past the first starts on the
        // last node already emitted
        mesh.layer_begin.push_back(layer == 0 ? 0 : static_cast<int>(mesh.nodes.size()) - 1);
        for (int i = (layer == 0 ? 0 : 1); i <= n; ++i)
            mesh.nodes.push_back(to_double(lo + (hi - lo) * i / n));
    }
    return mesh;
}

}  // namespace piezstab
