#pragma once

#include <optional>
#include <vector>

#include "griddesigns/grid.hpp"

namespace gd {

// Shape parameters of the recursive family: e_1 = p^2+p+1 and
// e_i = p^(2^(i-1)) - p^(2^(i-2)) + 1 for i >= 2, so that v - 1 = k(k-1)
// with k = p^(2^(s-1)) + 1.
struct DesShape {
  int s = 0;
  int p = 0;
  std::vector<BigInt> e;
  std::vector<BigInt> q;  // q[i] = p^(2^(i-2)) for factor index i >= 2 (1-based), else 0
  BigInt v;
  BigInt k;

  // throws RangeError when a factor exceeds machine range
  GridShape grid() const;
};

DesShape des_shape(int s, int p);

// Recognizes a family shape, returning p.
std::optional<int> des_p_of(const GridShape& shape);

// Family blocks. Each construction re-derives its expected per-factor cell
// counts and asserts them before returning (IntegrityError on mismatch).
Block des2(int p);
Block des3(int p);
Block des4_2();

BigInt lambda_des2_closed_form(int p);

// Union of bprime x {0} with the extra layer points bs, over the shape of
// bprime extended by a factor of size e_last.
Block assemble(const Block& bprime, const Block& bs, int e_last);

}  // namespace gd
