#include "spath/fock.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace spath {

namespace {
constexpr cplx kI{0.0, 1.0};
}

ParticleSpec ParticleSpec::make(int type_index, RepKind rep, double mass, Statistics stat) {
    if (!(mass > 0.0)) throw std::invalid_argument("ParticleSpec: mass must be > 0");
    const int twice_j = LorentzRepresentation::get(rep).twice_j;
    const bool half_integer = (twice_j % 2) == 1;
    if ((stat == Statistics::fermion) != half_integer)
        throw std::invalid_argument("ParticleSpec: statistics incompatible with spin");
    return {type_index, rep, mass, stat};
}

MultiParticleLabel MultiParticleLabel::make(std::vector<ParticleLeg> legs) {
    if (legs.empty()) throw std::invalid_argument("MultiParticleLabel: empty particle list");
    if (legs.size() > max_particles)
        throw std::invalid_argument("MultiParticleLabel: too many particles");
    return {std::move(legs)};
}

namespace {

bool same_type(const ParticleSpec& a, const ParticleSpec& b) {
    return a.type_index == b.type_index;
}

bool type_multisets_match(const MultiParticleLabel& bra, const MultiParticleLabel& ket) {
    std::map<int, int> count;
    for (const auto& leg : bra.legs) count[leg.spec.type_index]++;
    for (const auto& leg : ket.legs) count[leg.spec.type_index]--;
    return std::all_of(count.begin(), count.end(), [](auto& kv) { return kv.second == 0; });
}

// Parity of the permutation induced on the fermion legs (ket order), counted
// as inversions among their images.
int fermion_parity(const std::vector<int>& perm, const std::vector<bool>& is_fermion) {
    std::vector<int> images;
    for (std::size_t i = 0; i < perm.size(); ++i)
        if (is_fermion[i]) images.push_back(perm[i]);
    int inversions = 0;
    for (std::size_t a = 0; a < images.size(); ++a)
        for (std::size_t b = a + 1; b < images.size(); ++b)
            if (images[a] > images[b]) ++inversions;
    return (inversions % 2 == 0) ? +1 : -1;
}

}  // namespace

InnerProductResult multiparticle_inner_product(const MultiParticleLabel& bra,
                                               const MultiParticleLabel& ket, double eps) {
    if (bra.size() != ket.size()) return {cplx(0.0), true};
    if (!type_multisets_match(bra, ket)) return {cplx(0.0), true};

    const std::size_t n = ket.size();
    // pairwise propagator entries Delta^{l'_i}_{l_j}(x'_i - x_j), computed once
    Eigen::MatrixXcd pair = Eigen::MatrixXcd::Zero(n, n);
    std::vector<std::vector<bool>> ok(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!same_type(bra.legs[i].spec, ket.legs[j].spec)) continue;
            const auto& spec = ket.legs[j].spec;
            const auto full = nonscalar_propagator(spec.representation(),
                                                   bra.legs[i].position - ket.legs[j].position,
                                                   spec.mass, eps);
            pair(i, j) = full(bra.legs[i].component, ket.legs[j].component);
            ok[i][j] = true;
        }

    std::vector<bool> is_fermion(n);
    for (std::size_t j = 0; j < n; ++j)
        is_fermion[j] = ket.legs[j].spec.statistics == Statistics::fermion;

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0.0;
    do {
        bool allowed = true;
        cplx term = 1.0;
        for (std::size_t j = 0; j < n && allowed; ++j) {
            if (!ok[perm[j]][j])
                allowed = false;
            else
                term *= pair(perm[j], j);
        }
        if (allowed) total += double(fermion_parity(perm, is_fermion)) * term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {total, false};
}

Eigen::MatrixXcd external_leg_factor(const ThreeMomentum& p, const FourVector& vertex_x,
                                     const ParticleSpec& spec, LegDirection direction,
                                     Species species) {
    const auto& rep = spec.representation();
    const double e = on_shell_energy(p, spec.mass);
    const double phase_arg = e * vertex_x.t - (p.px * vertex_x.x + p.py * vertex_x.y +
                                               p.pz * vertex_x.z);
    // outgoing particle carries e^{+i(E x0 - p.x)}, incoming the conjugate;
    // antiparticles reverse the time sense.
    const double dir = direction == LegDirection::outgoing ? +1.0 : -1.0;
    const double sp = species == Species::particle ? +1.0 : -1.0;
    const cplx phase = std::exp(kI * dir * sp * phase_arg);
    const double norm = std::pow(2.0 * M_PI, -1.5);

    const auto frame = build_spin_frame(
        rep, UnitTimelike::on_shell(p, spec.mass, species == Species::particle ? +1 : -1));
    const Eigen::MatrixXcd& coeff = species == Species::particle ? frame.u : frame.v;
    if (direction == LegDirection::outgoing)
        return norm * phase * special_adjoint(rep, coeff);
    return norm * phase * coeff;
}

VertexSpec VertexSpec::make(std::vector<int> in_dims, std::vector<int> out_dims,
                            std::vector<cplx> coupling) {
    if (in_dims.size() > 3 || out_dims.size() > 3)
        throw std::invalid_argument("VertexSpec: at most 3 legs per side");
    std::size_t expect = 1;
    for (int d : in_dims) expect *= d;
    for (int d : out_dims) expect *= d;
    if (coupling.size() != expect)
        throw std::invalid_argument("VertexSpec: coupling tensor size mismatch");
    return {std::move(in_dims), std::move(out_dims), std::move(coupling)};
}

VertexBox default_vertex_box(const std::vector<VertexLeg>& in_legs,
                             const std::vector<VertexLeg>& out_legs) {
    double m_min = std::numeric_limits<double>::infinity();
    for (const auto& l : in_legs) m_min = std::min(m_min, l.spec.mass);
    for (const auto& l : out_legs) m_min = std::min(m_min, l.spec.mass);
    const double extent = 20.0 / m_min;
    return {extent, extent};
}

cplx vertex_amplitude_first_order(const std::vector<VertexLeg>& in_legs,
                                  const std::vector<VertexLeg>& out_legs,
                                  const VertexSpec& vertex, std::optional<VertexBox> box) {
    if (in_legs.size() != vertex.in_dims.size() || out_legs.size() != vertex.out_dims.size())
        throw std::invalid_argument("vertex_amplitude_first_order: leg count mismatch");
    if (in_legs.size() + out_legs.size() > 6)
        throw std::invalid_argument("vertex_amplitude_first_order: too many legs");
    for (std::size_t i = 0; i < in_legs.size(); ++i)
        if (in_legs[i].spec.representation().dim != vertex.in_dims[i])
            throw std::invalid_argument("vertex_amplitude_first_order: in-slot dim mismatch");
    for (std::size_t j = 0; j < out_legs.size(); ++j)
        if (out_legs[j].spec.representation().dim != vertex.out_dims[j])
            throw std::invalid_argument("vertex_amplitude_first_order: out-slot dim mismatch");

    const VertexBox b = box ? *box : default_vertex_box(in_legs, out_legs);

    // Leg coefficient vectors at the vertex (phase stripped; the x-dependent
    // phases are integrated analytically below).
    std::vector<Eigen::VectorXcd> coeffs;
    double omega = 0.0;                  // coefficient of x0 in the total phase
    std::array<double, 3> k{0, 0, 0};  // coefficient of x

    const auto accumulate_leg = [&](const VertexLeg& leg, LegDirection dir) {
        const double e = on_shell_energy(leg.momentum, leg.spec.mass);
        const double ds = dir == LegDirection::outgoing ? +1.0 : -1.0;
        const double sp = leg.species == Species::particle ? +1.0 : -1.0;
        omega += ds * sp * e;
        k[0] -= ds * sp * leg.momentum.px;
        k[1] -= ds * sp * leg.momentum.py;
        k[2] -= ds * sp * leg.momentum.pz;
        const auto factor = external_leg_factor(leg.momentum, FourVector{0, 0, 0, 0},
                                                leg.spec, dir, leg.species);
        if (dir == LegDirection::outgoing)
            coeffs.push_back(factor.row(leg.spin_component).transpose());
        else
            coeffs.push_back(factor.col(leg.spin_component));
    };
    for (const auto& leg : in_legs) accumulate_leg(leg, LegDirection::incoming);
    for (const auto& leg : out_legs) accumulate_leg(leg, LegDirection::outgoing);

    // contract g with the leg vectors over all representation indices
    const std::size_t slots = vertex.slot_count();
    std::vector<int> dims;
    for (int d : vertex.in_dims) dims.push_back(d);
    for (int d : vertex.out_dims) dims.push_back(d);
    std::vector<int> idx(slots, 0);
    cplx contracted = 0.0;
    for (std::size_t flat = 0; flat < vertex.coupling.size(); ++flat) {
        cplx term = vertex.coupling[flat];
        for (std::size_t s = 0; s < slots; ++s) term *= coeffs[s](idx[s]);
        contracted += term;
        for (int s = int(slots) - 1; s >= 0; --s) {
            if (++idx[s] < dims[s]) break;
            idx[s] = 0;
        }
    }

    // box integral of e^{i(omega x0 + k.x)}
    const double t_factor = 2.0 * b.half_time * sinc(omega * b.half_time);
    double s_factor = 1.0;
    for (double kc : k) s_factor *= 2.0 * b.half_length * sinc(kc * b.half_length);

    return -kI * contracted * t_factor * s_factor;
}

}  // namespace spath
