#pragma once

#include "qes/generator.hpp"
#include "qes/jet.hpp"

namespace qes {

// Everything the construction needs at one point for a fixed square-root sign,
// straight from the explicit formulas. Valid depths: u 6, s 5, wp/wt 5,
// w0/w1/w2 4, vm/vp 3, p2 4.
struct LocalJets {
    Jet u;
    Jet s;
    Jet wp;  // W+
    Jet wt;  // W~+
    Jet w0;
    Jet w1;
    Jet w2;
    Jet vm;
    Jet vp;
    Jet p2;  // (W0 + W2) W~+ - W~+'
};

// Throws NegativeDiscriminant when S is negative beyond roundoff and DomainError
// at removable singularities, where the explicit formulas are 0/0.
LocalJets local_jets(const GeneratingFunction& g, double x, int sign);

Jet w_plus(const GeneratingFunction& g, double x, int sign);
Jet w_plus_tilde(const GeneratingFunction& g, double x, int sign);

// Relative slack allowed below zero for S before it counts as negative.
inline constexpr double discriminant_tolerance = 1e-12;

}  // namespace qes
