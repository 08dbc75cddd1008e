// Tabulated phi components of the sector-2 closed-form generators. These are
// long fixed expressions kept verbatim for the transcription comparison in
// generators_n2; the returned fields themselves are built through the
// elimination chain, not from these tables.
#include <complex>

#include "sixv/poly.hpp"

namespace sixv {
namespace detail {

namespace {
using std::complex;

cplx phi_h(cplx x, cplx L, cplx u, cplx P, cplx M, cplx dP, cplx dM, cplx Pu, cplx Mu) {
    cplx num =
        (-2.0 * (u - x) * P * P - 2.0 * (u - x) * (x * (2.0 * u - x) * dM - L) * P +
         x * L * (2.0 * u - x) * (2.0 * (u - x) * dM - dP) -
         Pu * (2.0 * (x * x - 2.0 * u * x + 2.0 * u * u) * M * M +
               2.0 * M *
                   (-L * (x * x - 2.0 * u * x + 2.0 * u * u) +
                    P * (x * x - 2.0 * u * x + 2.0 * u * u) +
                    x * (x * x - 3.0 * u * x + 2.0 * u * u) * dP))) *
            Mu * Mu * Mu +
        ((2.0 * L * (-2.0 * x * x * x + 7.0 * u * x * x - 9.0 * u * u * x - x +
                     4.0 * u * u * u + 2.0 * u) -
          2.0 * (4.0 * u * u * u - 9.0 * x * u * u + (7.0 * x * x + 3.0) * u -
                 2.0 * (x * x * x + x)) *
              P +
          x * (3.0 * x * x * x - 14.0 * u * x * x + 19.0 * u * u * x + 2.0 * x -
               8.0 * u * u * u - 2.0 * u) *
              dP) *
             M +
         (4.0 * x * x - 10.0 * u * x + 5.0 * u * u + 1.0) * P * P -
         P * (L * (4.0 * x * x - 10.0 * u * x + 5.0 * u * u + 1.0) +
              x * (-8.0 * u * u * u + 19.0 * x * u * u - 2.0 * (7.0 * x * x + 1.0) * u +
                   x * (3.0 * x * x + 2.0)) *
                  dM) +
         x * L *
             ((-8.0 * u * u * u + 19.0 * x * u * u - 2.0 * (7.0 * x * x + 2.0) * u +
               3.0 * (x * x * x + x)) *
                  dM +
              (2.0 * x * x - 7.0 * u * x + 5.0 * u * u + 1.0) * dP)) *
            Mu * Mu +
        Pu * Pu *
            ((-2.0 * (2.0 * u * u * u - 3.0 * x * u * u + (x * x + 2.0) * u - x) * M * M -
              2.0 * (2.0 * u * u * u - 6.0 * x * u * u + 5.0 * x * x * u + u -
                     x * (x * x + 1.0))) +
             (x * (x * x - 6.0 * u * x + 5.0 * u * u + 3.0) * dP * (u - x) * (u - x) -
              L * (x * x * x * x + 4.0 * x * x - 16.0 * u * u * u * x -
                   4.0 * (2.0 * x * x + 3.0) * u * x + 5.0 * u * u * u * u +
                   6.0 * (3.0 * x * x + 1.0) * u * u + 1.0) +
              (x * x * x * x + 5.0 * x * x - 16.0 * u * u * u * x -
               8.0 * (x * x + 2.0) * u * x + 5.0 * u * u * u * u +
               9.0 * (2.0 * x * x + 1.0) * u * u + 2.0) *
                  P) *
                 M -
             (u - x) * P *
                 (-2.0 * L * (x * x - 4.0 * u * x + 2.0 * u * u + 1.0) -
                  x * (x * x * x - 7.0 * u * x * x + 11.0 * u * u * x + 3.0 * x -
                       5.0 * u * u * u - 3.0 * u) *
                      dM) +
             x * L *
                 ((x * x * x * x + 4.0 * x * x - 16.0 * u * u * u * x -
                   2.0 * (4.0 * x * x + 5.0) * u * x + 5.0 * u * u * u * u +
                   6.0 * (3.0 * x * x + 1.0) * u * u + 1.0) *
                      dM +
                  (x * x * x - 6.0 * u * x * x + 9.0 * u * u * x + 2.0 * x -
                   4.0 * u * u * u - 2.0 * u) *
                      dP)) *
            Mu -
        Pu * Pu * Pu *
            ((u * u * u * u - 2.0 * x * u * u * u + (x * x + 2.0) * u * u - 2.0 * x * u -
              x * x + 1.0) *
                 M * M +
             M * (-x * (u * u - x * u + 1.0) * dP * (u - x) * (u - x) * (u - x) +
                  L * (u * u * u * u * u - 4.0 * x * u * u * u * u +
                       (6.0 * x * x + 2.0) * u * u * u - 2.0 * x * (2.0 * x * x + 3.0) * u * u +
                       (x * x * x * x + 4.0 * x * x + 1.0) * u - 2.0 * x) -
                  (u * u * u * u * u - 4.0 * x * u * u * u * u +
                   (6.0 * x * x + 3.0) * u * u * u - 4.0 * x * (x * x + 2.0) * u * u +
                   (x * x * x * x + 5.0 * x * x + 2.0) * u - 2.0 * x) *
                      P) -
             (u - x) * (-(u * u * u - 3.0 * x * u * u + 2.0 * x * x * u + u - x) * P * P -
                        (u - x) *
                            (x * (u * u * u - 2.0 * x * u * u + x * x * u + u - x) * dM -
                             L * (u * u - 2.0 * x * u + 1.0)) *
                            P +
                        x * L * (u * u - x * u + 1.0) *
                            ((x * x - 2.0 * u * x + u * u + 1.0) * dM + (x - u) * dP)));
    cplx den = (Mu + u * Pu) *
               (2.0 * (u - x) * Mu + (x * x - 2.0 * u * x + u * u + 1.0) * Pu) *
               (Mu * (2.0 * (u - x) * M - P) +
                ((x * x - 2.0 * u * x + u * u + 1.0) * M + (x - u) * P) * Pu);
    return 2.0 * num / den;
}

cplx phi_p(cplx x, cplx L, cplx u, cplx P, cplx M, cplx dP, cplx dM, cplx Pu, cplx Mu) {
    cplx u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u, u6 = u5 * u;
    cplx x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    cplx num =
        (8.0 * M * M * (u - x) * (u - x) * (u - x) -
         2.0 * (2.0 * x3 + 4.0 * u2 * x + x - (6.0 * x2 + 1.0) * u) * P * P +
         2.0 * x * (x2 - 3.0 * u * x + 2.0 * u2) * P * (2.0 * L + x * (x - 2.0 * u) * dM) -
         x2 * L * (x - 2.0 * u) * (x - 2.0 * u) * (dP - 2.0 * (u - x) * dM) +
         2.0 * M *
             ((8.0 * x * u3 - 4.0 * (4.0 * x2 + 1.0) * u2 + 4.0 * x * (3.0 * x2 + 2.0) * u -
               x2 * (3.0 * x2 + 4.0)) *
                  P +
              x * (2.0 * u - x) *
                  (L * (-3.0 * x2 + 6.0 * u * x - 4.0 * u2) +
                   x * (x2 - 3.0 * u * x + 2.0 * u2) * dP))) *
            Mu * Mu * Mu +
        Pu *
            (L * (2.0 * u - x) *
                 ((6.0 * u3 - 13.0 * x * u2 + (8.0 * x2 + 6.0) * u - x * (x2 + 5.0)) * dM -
                  (x2 - 5.0 * u * x + 4.0 * u2 + 2.0) * dP) *
                 x2 -
             P *
                 (L * (-16.0 * u3 + 34.0 * x * u2 - 4.0 * (5.0 * x2 + 2.0) * u +
                       3.0 * x * (x2 + 2.0)) +
                  x *
                      (12.0 * u4 - 32.0 * x * u3 + (29.0 * x2 + 8.0) * u2 -
                       2.0 * x * (5.0 * x2 + 6.0) * u + x2 * (x2 + 4.0)) *
                      dM) *
                 x +
             2.0 *
                 (6.0 * u4 - 24.0 * x * u3 + (28.0 * x2 + 6.0) * u2 - 12.0 * (x3 + x) * u +
                  x2 * (x2 + 6.0)) *
                 M * M +
             (3.0 * x4 + 7.0 * x2 - 16.0 * u3 * x - 2.0 * (10.0 * x2 + 7.0) * u * x +
              (34.0 * x2 + 5.0) * u2 + 1.0) *
                 P * P +
             M * (2.0 *
                      (12.0 * x * u4 - 8.0 * (4.0 * x2 + 1.0) * u3 +
                       (30.0 * x3 + 32.0 * x) * u2 - (11.0 * x4 + 30.0 * x2 + 4.0) * u +
                       x * (x4 + 8.0 * x2 + 4.0)) *
                      P +
                  x * (x *
                           (12.0 * u4 - 32.0 * x * u3 + (29.0 * x2 + 8.0) * u2 -
                            2.0 * x * (5.0 * x2 + 6.0) * u + x2 * (x2 + 4.0)) *
                           dP -
                       2.0 * L *
                           (12.0 * u4 - 32.0 * x * u3 + 6.0 * (5.0 * x2 + 2.0) * u2 -
                            x * (11.0 * x2 + 16.0) * u + x2 * (x2 + 6.0))))) *
            Mu * Mu +
        Pu * Pu *
            (L * (-u2 + x * u - 1.0) *
                 ((2.0 * x2 - 7.0 * u * x + 5.0 * u2 + 1.0) * dP -
                  2.0 * (3.0 * u3 - 7.0 * x * u2 + (5.0 * x2 + 3.0) * u - x * (x2 + 2.0)) * dM) *
                 x2 -
             2.0 * P *
                 (x *
                      (3.0 * u5 - 10.0 * x * u4 + 4.0 * (3.0 * x2 + 1.0) * u3 -
                       3.0 * x * (2.0 * x2 + 3.0) * u2 + (x4 + 6.0 * x2 + 1.0) * u -
                       x * (x2 + 1.0)) *
                      dM -
                  L * (5.0 * u4 - 14.0 * x * u3 + 6.0 * (2.0 * x2 + 1.0) * u2 -
                       x * (3.0 * x2 + 8.0) * u + 2.0 * x2 + 1.0)) *
                 x +
             2.0 *
                 (3.0 * u5 - 15.0 * x * u4 + (22.0 * x2 + 6.0) * u3 -
                  6.0 * x * (2.0 * x2 + 3.0) * u2 + (2.0 * x4 + 10.0 * x2 + 3.0) * u - 3.0 * x) *
                 M * M -
             2.0 *
                 (5.0 * x * u4 - 2.0 * (7.0 * x2 + 1.0) * u3 + 3.0 * x * (4.0 * x2 + 3.0) * u2 -
                  (3.0 * x4 + 9.0 * x2 + 1.0) * u + 2.0 * x3 + x) *
                 P * P +
             2.0 * M *
                 ((6.0 * x * u5 - 5.0 * (4.0 * x2 + 1.0) * u4 + 4.0 * x * (6.0 * x2 + 7.0) * u3 -
                   3.0 * (4.0 * x4 + 13.0 * x2 + 2.0) * u2 + 2.0 * x * (x4 + 8.0 * x2 + 7.0) * u -
                   x4 - 5.0 * x2 - 1.0) *
                      P +
                  x * (L * (-6.0 * u5 + 20.0 * x * u4 - 12.0 * (2.0 * x2 + 1.0) * u3 +
                            12.0 * x * (x2 + 2.0) * u2 - 2.0 * (x4 + 6.0 * x2 + 3.0) * u +
                            x * (x2 + 4.0)) +
                       x *
                           (3.0 * u5 - 10.0 * x * u4 + 4.0 * (3.0 * x2 + 1.0) * u3 -
                            3.0 * x * (2.0 * x2 + 3.0) * u2 + (x4 + 6.0 * x2 + 1.0) * u -
                            x * (x2 + 1.0)) *
                           dP))) *
            Mu +
        Pu * Pu * Pu *
            (x2 * L * ((x2 - 2.0 * u * x + u2 + 1.0) * dM + (x - u) * dP) *
                 (u2 - x * u + 1.0) * (u2 - x * u + 1.0) -
             x * P *
                 (x * (u2 - x * u + 1.0) * dM * (u - x) * (u - x) +
                  L * (-2.0 * u3 + 5.0 * x * u2 - (3.0 * x2 + 2.0) * u + x)) *
                 (u2 - x * u + 1.0) +
             (u6 - 6.0 * x * u5 + (11.0 * x2 + 3.0) * u4 - 4.0 * x * (2.0 * x2 + 3.0) * u3 +
              (2.0 * x4 + 10.0 * x2 + 3.0) * u2 - 6.0 * x * u - x2 + 1.0) *
                 M * M -
             (u - x) * (u - x) * (2.0 * x * u3 - (3.0 * x2 + 1.0) * u2 + 4.0 * x * u - 1.0) * P *
                 P +
             M * (2.0 *
                      (x * u6 - (4.0 * x2 + 1.0) * u5 + x * (6.0 * x2 + 7.0) * u4 -
                       (4.0 * x4 + 13.0 * x2 + 2.0) * u3 + x * (x4 + 8.0 * x2 + 7.0) * u2 -
                       (x4 + 5.0 * x2 + 1.0) * u + x) *
                      P +
                  x * (u2 - x * u + 1.0) *
                      (x * (u - x) * (u - x) * (u2 - x * u + 1.0) * dP -
                       2.0 * L *
                           (u4 - 3.0 * x * u3 + (3.0 * x2 + 2.0) * u2 - x * (x2 + 3.0) * u +
                            1.0))));
    cplx den = (2.0 * u * Mu + (u2 + 1.0) * Pu) * (2.0 * u * Mu + (u2 + 1.0) * Pu) *
               (2.0 * (u - x) * Mu + (x2 - 2.0 * u * x + u2 + 1.0) * Pu) *
               (Mu * (2.0 * (u - x) * M - P) +
                ((x2 - 2.0 * u * x + u2 + 1.0) * M + (x - u) * P) * Pu);
    return num / den;
}

cplx phi_m(cplx x, cplx L, cplx u, cplx P, cplx M, cplx dP, cplx dM, cplx Pu, cplx Mu) {
    cplx u2 = u * u;
    cplx x2 = x * x;
    cplx ux = u - x;
    cplx num =
        (2.0 * u * Mu + (u2 + 1.0) * Pu) * (2.0 * u * Mu + (u2 + 1.0) * Pu) *
        (Pu * Mu * Mu *
             (L * ((-10.0 * u * x + 5.0 * u2 + 5.0 * x2 + 1.0) * dM + 3.0 * (x - u) * dP) +
              ux * M * (-2.0 * L + 5.0 * ux * dP + 2.0 * P) - P * (L + 5.0 * ux * ux * dM) -
              2.0 * M * M + P * P) +
         Pu * Pu * Mu *
             (ux * (L * ((-8.0 * u * x + 4.0 * u2 + 4.0 * x2 + 2.0) * dM +
                         3.0 * (x - u) * dP) -
                    2.0 * P * (L + 2.0 * ux * ux * dM) + 2.0 * P * P) +
              2.0 * M * (L + 2.0 * ux * ux * ux * dP - P) - 2.0 * ux * M * M) +
         Pu * Pu * Pu *
             (ux * ux *
                  (L * ((-2.0 * u * x + u2 + x2 + 1.0) * dM + (x - u) * dP) -
                   P * (L + ux * ux * dM) + P * P) -
              (-2.0 * u * x + u2 + x2 - 1.0) * M * M +
              ux * M * (2.0 * L + ux * ux * ux * dP - 2.0 * P)) +
         Mu * Mu * Mu *
             (-(-2.0 * ux * (L - P) * dM + 2.0 * M * (L + (x - u) * dP - P) + L * dP)));
    cplx den = (Mu + u * Pu) * (Mu + u * Pu) *
               (Pu * (-2.0 * u * x + u2 + x2 + 1.0) + 2.0 * Mu * ux) *
               (Pu * ((-2.0 * u * x + u2 + x2 + 1.0) * M + (x - u) * P) +
                Mu * (2.0 * ux * M - P));
    return -num / den;
}

}  // namespace

cplx n2_phi_table(int which, cplx x, cplx lam, cplx u1, const Poly& lp, const Poly& lm) {
    cplx P = lp(x), M = lm(x);
    cplx dP = lp.derivative()(x), dM = lm.derivative()(x);
    cplx Pu = lp(u1), Mu = lm(u1);
    switch (which) {
        case 1: return phi_p(x, lam, u1, P, M, dP, dM, Pu, Mu);
        case 2: return phi_m(x, lam, u1, P, M, dP, dM, Pu, Mu);
        default: return phi_h(x, lam, u1, P, M, dP, dM, Pu, Mu);
    }
}

}  // namespace detail
}  // namespace sixv
