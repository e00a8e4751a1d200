#include "mimetic/adjoint3.hpp"

#include "mimetic/operators3.hpp"
#include "mimetic/random.hpp"

#include <algorithm>
#include <cmath>

namespace mimetic::mimetic3d {
namespace {

template <Kind K>
Field3<K> random_field(const Grid3& g, Rng& rng, int margin)
{
    Field3<K> f(g);
    for (int c = 0; c < Field3<K>::ncomp; ++c)
        for (double& v : f[c].values()) v = uniform(rng);
    zero_layer(f, margin);
    return f;
}

template <Kind KX, Kind KY, class L, class Ladj>
double worst_residual(const Star3& m, const AdjointOptions& opt, Rng& rng, L op, Ladj adj)
{
    double worst = 0.0;
    for (int t = 0; t < opt.trials; ++t) {
        Field3<KX> f = random_field<KX>(m.grid, rng, opt.support_margin);
        Field3<KY> g = random_field<KY>(m.grid, rng, opt.support_margin);
        Field3<KY> lf = op(f);
        if (t % 2 == 1) g += lf;
        Field3<KX> lg = adj(g);
        const double lhs = inner3(lf, g, m);
        const double rhs = inner3(f, lg, m);
        const double scale = norm3(lf, m) * norm3(g, m) + norm3(f, m) * norm3(lg, m) + 1e-300;
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

}  // namespace

double AdjointReport::max_residual() const
{
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.residual);
    return m;
}

AdjointReport check_discrete_adjoints(const Star3& m, const AdjointOptions& opt)
{
    Rng rng(opt.seed);
    const double sg = opt.flip_grad_star_sign ? -1.0 : 1.0;
    auto gstar = [&](const DualNodeField& s) { return sg * grad3_star(s); };
    AdjointReport rep;

    rep.entries.push_back({"G vs -a^-1 D* A", worst_residual<Kind::node, Kind::edge>(
        m, opt, rng, [](const NodeField& s) { return grad3(s); },
        [&](const EdgeField& t) { return -1.0 * star_a_inv(div3_star(star_A(t, m)), m); })});

    rep.entries.push_back({"R vs A^-1 R* B^-1", worst_residual<Kind::edge, Kind::face>(
        m, opt, rng, [](const EdgeField& t) { return curl3(t); },
        [&](const FaceField& n) { return star_A_inv(curl3_star(star_B_inv(n, m)), m); })});

    rep.entries.push_back({"D vs -B G* b^-1", worst_residual<Kind::face, Kind::cell>(
        m, opt, rng, [](const FaceField& n) { return div3(n); },
        [&](const CellField& d) { return -1.0 * star_B(gstar(star_b_inv(d, m)), m); })});

    rep.entries.push_back({"G* vs -b^-1 D B", worst_residual<Kind::dual_node, Kind::dual_edge>(
        m, opt, rng, gstar,
        [&](const DualEdgeField& t) { return -1.0 * star_b_inv(div3(star_B(t, m)), m); })});

    rep.entries.push_back({"R* vs B^-1 R A^-1", worst_residual<Kind::dual_edge, Kind::dual_face>(
        m, opt, rng, [](const DualEdgeField& t) { return curl3_star(t); },
        [&](const DualFaceField& n) { return star_B_inv(curl3(star_A_inv(n, m)), m); })});

    rep.entries.push_back({"D* vs -A G a^-1", worst_residual<Kind::dual_face, Kind::dual_cell>(
        m, opt, rng, [](const DualFaceField& n) { return div3_star(n); },
        [&](const DualCellField& d) { return -1.0 * star_A(grad3(star_a_inv(d, m)), m); })});

    // <A G s, n*>_{F*} = -<s, a^-1 D* n*>_N
    rep.entries.push_back({"<AGs,n*>_F* = -<s,a^-1 D* n*>_N", worst_residual<Kind::node, Kind::dual_face>(
        m, opt, rng, [&](const NodeField& s) { return star_A(grad3(s), m); },
        [&](const DualFaceField& n) { return -1.0 * star_a_inv(div3_star(n), m); })});

    return rep;
}

NegativityReport negativity_check(const Star3& m, int trials, std::uint64_t seed, double tol)
{
    Rng rng(seed);
    NegativityReport rep;
    for (int t = 0; t < trials; ++t) {
        NodeField f = random_field<Kind::node>(m.grid, rng, 2);
        NodeField lf = star_a_inv(div3_star(star_A(grad3(f), m)), m);
        const double val = inner3(lf, f, m);
        const double scale = norm3(f, m) * norm3(lf, m);
        const double ratio = scale > 0.0 ? val / scale : 0.0;
        if (t == 0 || ratio > rep.worst) rep.worst = ratio;
        if (ratio > tol) rep.ok = false;
    }
    return rep;
}

}  // namespace mimetic::mimetic3d
