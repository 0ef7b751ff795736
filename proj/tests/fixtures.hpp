#pragma once

// Presentation sources used across the test suite. The four parameterized
// families live in the catalog module; this header carries independent
// copies of two of them (so catalog output can be cross-checked against a
// second transcription) plus synthetic groups that exercise individual
// pipeline stages.

namespace fixtures {

// 2-step family instance, k = 1. Head alpha of order 2 acting on a
// class-2 lattice; isolated commutator subgroup is <d>.
inline const char* f1_k1 = R"(
group F1 {
  params: k=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [b, a] = 1;
    [c, a] = d^k;
    [d, a] = 1;
    [c, b] = d^k;
    [d, b] = 1;
    [d, c] = 1;
    alpha^2 = d;
    alpha a alpha^-1 = b^-1;
    alpha b alpha^-1 = a^-1;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
  series { 2: d; }
}
)";

// 3-step family instance, k = 1, l = 1.
inline const char* f2_k1l1 = R"(
group F2 {
  params: k=1, l=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [b, a] = c^(2 l) d^((2 l - 1) k);
    [c, a] = 1;
    [d, a] = 1;
    [c, b] = d^(2 k);
    [d, b] = 1;
    [d, c] = 1;
    alpha^2 = d;
    alpha a alpha^-1 = a c^-1;
    alpha b alpha^-1 = b^-1;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
  series { 2: c, d; 3: d; }
}
)";

// The f1 group re-entered with the first layer's generators declared in a
// different order (c, a, b). Conjugation relations are restated for the
// new pair order; the decision pipeline must produce the same verdict.
inline const char* f1_permuted = R"(
group PERMF1 {
  lattice c, a, b, d;
  holonomy alpha: order 2;
  relations {
    [a, c] = d^-1;
    [b, c] = d^-1;
    [b, a] = 1;
    [d, c] = 1;
    [d, a] = 1;
    [d, b] = 1;
    alpha^2 = d;
    alpha a alpha^-1 = b^-1;
    alpha b alpha^-1 = a^-1;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
  series { 2: d; }
}
)";

// Flat plane group crossed up to a six-fold symmetry: Z^2 with a rotation
// of order 6 (matrix [[0,-1],[1,1]]). Its cube acts as -I, so the 2-Sylow
// reduction must land on a single order-2 head of index 3.
inline const char* sync6 = R"(
group SYNC6 {
  lattice a, b;
  holonomy r: order 6;
  relations {
    r^6 = 1;
    r a r^-1 = b;
    r b r^-1 = a^-1 b;
  }
}
)";

// Orientable flat group with holonomy C2 x C2 (non-cyclic 2-Sylow): the
// decision pipeline must stop with an out-of-scope verdict.
inline const char* vier = R"(
group VIER {
  lattice a, b, c, d, e, f;
  holonomy s: order 2, t: order 2;
  relations {
    s^2 = a;
    t^2 = b;
    s t s^-1 = t;
    s c s^-1 = c^-1;
    s d s^-1 = d^-1;
    t e t^-1 = e^-1;
    t f t^-1 = f^-1;
  }
}
)";

// 5-dimensional flat group where the involution negates four coordinates:
// j = 4, so the doubling criterion does not fire (theorem case a).
inline const char* flat5a = R"(
group FLAT5A {
  lattice a, b, c, d, e;
  holonomy alpha: order 2;
  relations {
    alpha^2 = a;
    alpha b alpha^-1 = b^-1;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d^-1;
    alpha e alpha^-1 = e^-1;
  }
}
)";

// Flat group with cyclic holonomy of order 4 (m = 2): rotation on the
// (a,b)-plane, translation part on c.
inline const char* flatc4 = R"(
group FLATC4 {
  lattice a, b, c, d;
  holonomy r: order 4;
  relations {
    r^4 = c;
    r a r^-1 = b;
    r b r^-1 = a^-1;
  }
}
)";

// Deliberate tampers: each must fail the overlap consistency check.
// First: the f2 head action on a with the c-twist dropped.
inline const char* tamper_f2_drop_twist = R"(
group T1 {
  params: k=1, l=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [b, a] = c^(2 l) d^((2 l - 1) k);
    [c, b] = d^(2 k);
    alpha^2 = d;
    alpha a alpha^-1 = a;
    alpha b alpha^-1 = b^-1;
    alpha c alpha^-1 = c^-1;
    alpha d alpha^-1 = d;
  }
}
)";

// Second: the f1 head action on c with the inversion dropped.
inline const char* tamper_f1_fix_c = R"(
group T2 {
  params: k=1;
  lattice a, b, c, d;
  holonomy alpha: order 2;
  relations {
    [c, a] = d^k;
    [c, b] = d^k;
    alpha^2 = d;
    alpha a alpha^-1 = b^-1;
    alpha b alpha^-1 = a^-1;
    alpha c alpha^-1 = c;
    alpha d alpha^-1 = d;
  }
}
)";

// Two commuting lattice generators: the smallest consistent presentation.
inline const char* z2 = R"(
group Z2 {
  lattice a, b;
  relations {
  }
}
)";

}  // namespace fixtures
