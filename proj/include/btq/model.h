#pragma once
#include <string>
#include <vector>

#include "btq/curve.h"
#include "btq/homology.h"
#include "btq/intmat.h"

namespace btq {

enum class CrystFlavor { T, ST, N, SN };
std::string cryst_str(CrystFlavor f);
CrystFlavor parse_cryst(const std::string& s);

// Affine group on Z^s generated by translations in `lattice` and, for N and
// SN, the point inversions x -> 2a - x at the points a of `centers`.
// Composites are x -> eps * x + v.
struct CrystGroup {
  int s = 0;
  CrystFlavor flavor = CrystFlavor::T;
  IntMatrix centers;  // rows: basis of {a : sum a_i [P_i] = 0}
  IntMatrix lattice;  // rows: translation basis (centers, or doubled)
  bool inversions() const { return flavor == CrystFlavor::N || flavor == CrystFlavor::SN; }
  int rank() const { return centers.rows; }
  struct Affine {
    int eps = 1;
    std::vector<long long> v;
    std::vector<long long> apply(const std::vector<long long>& x) const;
  };
  std::vector<Affine> generators() const;
};

CrystGroup build_cryst(const PicData& pic, CrystFlavor flavor);
// Synthetic input: phi maps Z^s to Z^m, row i taken modulo moduli[i] (0 = Z).
CrystGroup synthetic_cryst(const IntMatrix& phi, const std::vector<long long>& moduli, CrystFlavor flavor);

struct ModelCell {
  std::vector<long long> base;  // representative base point
  std::vector<int> dirs;
  int stabilizer = 1;           // 1 or 2
  std::vector<std::pair<int, int>> faces;
  // unmerged boundary terms; eps = -1 when the face is reached through an inversion
  struct Term {
    int target = 0;
    int sign = 1;
    int eps = 1;
  };
  std::vector<Term> terms;
};

struct ModelQuotient {
  int window = 0;
  int scale = 1;  // 2 when the complex was subdivided so inversions fix only vertices
  std::vector<std::vector<ModelCell>> cells;
  std::vector<int> counts() const;
  ChainComplex chain_complex() const;
};

// Quotient of the cells whose free coordinates lie in [-window, window].
ModelQuotient model_quotient(const CrystGroup& g, int window);
// Homology of the window quotient; throws if the window is too small or the
// result differs from the next larger window.
std::vector<FgAbGroup> quotient_homology(const CrystGroup& g, int window, Coeff coeff = Coeff::integers());
int min_window(const CrystGroup& g);

struct SpecialVertices {
  long long count = 0;
  std::vector<std::vector<long long>> reps;
};
SpecialVertices special_vertices(const CrystGroup& g);

// Abelianization of the determinant-one monomial group over the units
// k^x + Z^r (k^x cyclic of order given by units.torsion), with coefficients.
FgAbGroup sn_tilde_h1(const FgAbGroup& units, Coeff coeff = Coeff::integers());
FgAbGroup units_presentation(const CurveConfig& c, const PicData& pic);
FgAbGroup tensor(const FgAbGroup& g, Coeff coeff);

}  // namespace btq
