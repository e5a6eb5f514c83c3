#pragma once

// Hand transcriptions of the low-order expansions.

#include "ahs/term_engine.hpp"

namespace fixtures {

using namespace ahs;

inline Term T(Rational c, std::vector<Action> acts, std::vector<int> slots) {
    Term t;
    t.coeff = c;
    t.actions = std::move(acts);
    t.slots = std::move(slots);
    return t;
}

inline Beta X(int i) { return arg(i); }
inline Beta lead(int i) { return br(arg(i), tau()); }
inline Beta ad2(Beta y) { return br(tau(), br(tau(), y)); }
inline Beta adt(Beta y) { return br(tau(), y); }
inline Beta G(int target) { return gamma({}, target); }
inline Beta G(std::vector<int> d, int target) { return gamma(std::move(d), target); }

inline Expansion make(int k, std::vector<Term> terms) {
    Expansion e;
    e.order = k;
    e.terms = std::move(terms);
    return e;
}

inline const Rational half = make_q(1, 2);
inline const Rational mhalf = make_q(-1, 2);
inline const Rational quarter = make_q(1, 4);

// order 2, five terms
inline Expansion order2() {
    return make(2, {
        T(1, {{1, lead(2)}, {0, lead(1)}}, {}),
        T(mhalf, {{0, br(X(1), ad2(X(2)))}}, {}),
        T(1, {{0, lead(1)}}, {2}),
        T(1, {{0, br(X(1), G(2))}}, {}),
        T(1, {{1, lead(2)}}, {1}),
    });
}

// order 3 correction terms
inline Expansion order3_correction() {
    return make(3, {
        T(1, {{0, br(X(1), G({3}, 2))}}, {}),
        T(1, {{0, br(X(1), G(2))}}, {3}),
        T(1, {{0, br(X(1), G(3))}}, {2}),
        T(1, {{1, br(X(2), G(3))}}, {1}),
    });
}

// the full 24-term order 3 display
inline Expansion order3() {
    return make(3, {
        T(1, {{2, lead(3)}, {0, br(X(1), G(2))}}, {}),
        T(1, {{0, br(X(1), G({3}, 2))}}, {}),
        T(1, {{0, br(X(1), G(2))}}, {3}),

        T(1, {{2, lead(3)}, {1, lead(2)}, {0, lead(1)}}, {}),
        T(mhalf, {{1, lead(2)}, {0, br(X(1), ad2(X(3)))}}, {}),
        T(mhalf, {{1, br(X(2), ad2(X(3)))}, {0, lead(1)}}, {}),
        T(1, {{1, lead(2)}, {0, lead(1)}}, {3}),
        T(1, {{1, br(X(2), G(3))}, {0, lead(1)}}, {}),
        T(1, {{1, lead(2)}, {0, br(X(1), G(3))}}, {}),

        T(mhalf, {{2, lead(3)}, {0, br(X(1), ad2(X(2)))}}, {}),
        T(quarter, {{0, br(X(1), br(ad2(X(3)), adt(X(2))))}}, {}),
        T(quarter, {{0, br(X(1), adt(br(ad2(X(3)), X(2))))}}, {}),
        T(mhalf, {{0, br(X(1), ad2(X(2)))}}, {3}),
        T(mhalf, {{0, br(X(1), br(G(3), adt(X(2))))}}, {}),
        T(mhalf, {{0, br(X(1), adt(br(G(3), X(2))))}}, {}),

        T(1, {{2, lead(3)}, {0, lead(1)}}, {2}),
        T(mhalf, {{0, br(X(1), ad2(X(3)))}}, {2}),
        T(1, {{0, lead(1)}}, {2, 3}),
        T(1, {{0, br(X(1), G(3))}}, {2}),

        T(1, {{2, lead(3)}, {1, lead(2)}}, {1}),
        T(mhalf, {{1, br(X(2), ad2(X(3)))}}, {1}),
        T(1, {{1, lead(2)}}, {1, 3}),
        T(1, {{1, br(X(2), G(3))}}, {1}),

        T(1, {{2, lead(3)}}, {1, 2}),
    });
}

}  // namespace fixtures
