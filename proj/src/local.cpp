#include "qes/local.hpp"

#include <cmath>

#include "qes/errors.hpp"

namespace qes {

namespace {

struct Core {
    Jet u, s, wp, wt;
};

Core core(const GeneratingFunction& g, double x, int sign) {
    const EnergyPair& eps = g.energies();
    Core c;
    c.u = g.jet(x);
    c.s = stable_discriminant(c.u, eps);
    if (c.s[0] < -discriminant_tolerance * discriminant_scale(c.u, eps)) {
        throw NegativeDiscriminant("discriminant is negative", x);
    }
    const Jet root = sqrt(c.s);
    const Jet d = c.u.differentiated() + (sign >= 0 ? root : -root);
    const Jet shifted = c.u + 2.0 * eps.eps0;
    c.wp = 2.0 * c.u * shifted / d;
    c.wt = d / (2.0 * shifted);
    return c;
}

}  // namespace

LocalJets local_jets(const GeneratingFunction& g, double x, int sign) {
    const EnergyPair& eps = g.energies();
    const Core c = core(g, x, sign);
    LocalJets l;
    l.u = c.u;
    l.s = c.s;
    l.wp = c.wp;
    l.wt = c.wt;
    const Jet q = (c.wp.differentiated() - 2.0 * eps.eps0) / c.wp;
    l.w0 = 0.5 * (c.wp - q);
    l.w1 = 0.5 * (c.wp + q);
    l.w2 = 0.5 * (c.wt + (c.wt.differentiated() - 2.0 * eps.eps1) / c.wt);
    const Jet sq = l.w0 * l.w0;
    const Jet dw0 = l.w0.differentiated();
    l.vm = 0.5 * (sq - dw0);
    l.vp = 0.5 * (sq + dw0);
    l.p2 = (l.w0 + l.w2) * c.wt - c.wt.differentiated();
    return l;
}

Jet w_plus(const GeneratingFunction& g, double x, int sign) { return core(g, x, sign).wp; }

Jet w_plus_tilde(const GeneratingFunction& g, double x, int sign) { return core(g, x, sign).wt; }

}  // namespace qes
