#pragma once

#include "hardy/linalg.hpp"

namespace hardy {

// Quotient of an algebraic tensor product by the null space of its Gram matrix.
// emb maps algebraic vectors to coordinates, emb_pinv picks representatives.
struct InteriorTensor {
  Mat emb;       // rank x npairs
  Mat emb_pinv;  // npairs x rank
  int rank = 0;
  double gram_residual = 0.0;
};

InteriorTensor interior_tensor(const Mat& gram, double tol = 1e-10);

// operator on the algebraic side, compressed to coordinates
Mat quotient_map(const InteriorTensor& out, const Mat& op, const InteriorTensor& in);

}  // namespace hardy
