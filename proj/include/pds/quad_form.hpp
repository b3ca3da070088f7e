#pragma once

#include <cstdint>
#include <vector>

#include "pds/cyc_int.hpp"
#include "pds/cyclotomy.hpp"
#include "pds/gf_tower.hpp"

namespace pds {

/// Q(x) = Tr_{q^m/q}(x^{q^m+1}): the norm of x down to F_{q^m} followed by the
/// trace onto F_q. An F_q-valued quadratic form on F_{q^{2m}} as an F_q-space.
FieldElem eval_q_form(const FieldTable& tab, FieldElem x);

/// Polarization B(u, v) = Q(u+v) - Q(u) - Q(v); F_q-bilinear and symmetric.
FieldElem eval_bilinear(const FieldTable& tab, FieldElem u, FieldElem v);

/// Nonzero solutions of Q(x) = 0 in F_{q^{2m}}, with the type of the form.
struct QuadricSet {
    std::vector<FieldElem> elements;  // sorted by dlog
    int epsilon = 0;                  // +1 hyperbolic, -1 elliptic
};

/// Enumerates the zero set and classifies the form by its size:
/// (q^m + 1)(q^{m-1} - 1) nonzero zeros means elliptic,
/// (q^m - 1)(q^{m-1} + 1) means hyperbolic; anything else is an error.
QuadricSet quadric_zero_set(const FieldTable& tab);

/// True when the radical { u : B(u, v) = 0 for all v } is trivial.
bool bilinear_nonsingular(const FieldTable& tab);

/// Checks that the zero set equals the union of the cyclotomic classes
/// C_i^{(N, q^{2m})} over i in I = trace_zero_index_set. On failure the
/// symmetric difference (capped) is reported.
struct CyclotomicDescriptionCheck {
    bool pass = false;
    std::vector<FieldElem> symmetric_difference;  // capped at 16 entries
};
CyclotomicDescriptionCheck verify_cyclotomic_description(const FieldTable& tab);

/// Exact additive character sum  sum_{x: Q(x)=0, x != 0} psi_b(x)  for the
/// character psi_b(x) = zeta_p^{Tr(bx)}; evaluated by brute force.
CycInt quadric_char_value(const FieldTable& tab, FieldElem b);

}  // namespace pds
