#pragma once

#include <optional>
#include <vector>

#include "spath/spin.hpp"

namespace spath {

enum class Statistics { boson, fermion };

struct ParticleSpec {
    int type_index = 0;
    RepKind rep = RepKind::scalar;
    double mass = 1.0;
    Statistics statistics = Statistics::boson;

    /// Validates the spin-statistics pairing (fermions with half-integer j only).
    static ParticleSpec make(int type_index, RepKind rep, double mass, Statistics stat);

    const LorentzRepresentation& representation() const {
        return LorentzRepresentation::get(rep);
    }
};

struct ParticleLeg {
    FourVector position;
    ParticleSpec spec;
    int component = 0;  // representation index l
};

/// Ordered particle list for a Fock-space product; N capped at max_particles.
struct MultiParticleLabel {
    std::vector<ParticleLeg> legs;

    static constexpr std::size_t max_particles = 6;
    static MultiParticleLabel make(std::vector<ParticleLeg> legs);
    std::size_t size() const { return legs.size(); }
};

struct InnerProductResult {
    cplx value{0.0, 0.0};
    bool type_mismatch = false;
};

/// Permutation-sum inner product
///   sum_P delta_P prod_i Delta^{l'_{P i}}_{l_i}(x'_{P i} - x_i),
/// delta_P = -1 for an odd number of fermion interchanges. Mismatched particle
/// counts or type multisets give a flagged zero, not an error.
InnerProductResult multiparticle_inner_product(const MultiParticleLabel& bra,
                                               const MultiParticleLabel& ket,
                                               double eps = 1e-3);

enum class LegDirection { incoming, outgoing };
enum class Species { particle, antiparticle };

/// External-line factor at an interaction vertex:
///   outgoing particle:  (2pi)^{-3/2} e^{+i(E x0 - p.x)} u^ddag(n_p)
///   incoming particle:  (2pi)^{-3/2} e^{-i(E x0 - p.x)} u(n_p)
/// with v(n_p^-) variants and the time sense reversed for antiparticles.
/// Independent of any reference time. Outgoing factors are (2j+1) x dim rows,
/// incoming factors dim x (2j+1) columns.
Eigen::MatrixXcd external_leg_factor(const ThreeMomentum& p, const FourVector& vertex_x,
                                     const ParticleSpec& spec, LegDirection direction,
                                     Species species);

/// Coupling tensor with a incoming and b outgoing representation-index slots,
/// stored flat row-major over (in slots..., out slots...).
struct VertexSpec {
    std::vector<int> in_dims;
    std::vector<int> out_dims;
    std::vector<cplx> coupling;

    static VertexSpec make(std::vector<int> in_dims, std::vector<int> out_dims,
                           std::vector<cplx> coupling);
    std::size_t slot_count() const { return in_dims.size() + out_dims.size(); }
};

struct VertexLeg {
    ThreeMomentum momentum;
    ParticleSpec spec;
    int spin_component = 0;  // sigma index, 0 = highest weight
    Species species = Species::particle;
};

struct VertexBox {
    double half_time = 0.0;    // T
    double half_length = 0.0;  // L
};

/// Box for the vertex-position integral, defaults T = L = 20 / m_min.
VertexBox default_vertex_box(const std::vector<VertexLeg>& in_legs,
                             const std::vector<VertexLeg>& out_legs);

/// First-order (single vertex) amplitude: -i g contracted with the external
/// leg factors, with the vertex position integrated analytically over the box
/// (per-axis sinc factors).
cplx vertex_amplitude_first_order(const std::vector<VertexLeg>& in_legs,
                                  const std::vector<VertexLeg>& out_legs,
                                  const VertexSpec& vertex,
                                  std::optional<VertexBox> box = std::nullopt);

}  // namespace spath
