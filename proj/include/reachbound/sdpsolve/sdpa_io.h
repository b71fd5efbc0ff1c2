#pragma once

#include <istream>
#include <string>
#include <vector>

#include "reachbound/sdpsolve/sdp_instance.h"

namespace reachbound {

/// SDPA sparse data in its native primal form
///   min c^T x  s.t.  sum_i x_i F_i - F_0 PSD,
/// whose dual is  max <F_0, Y>  s.t.  <F_i, Y> = c_i, Y PSD.
/// Indices are 1-based; a negative block size marks a diagonal (LP) block.
struct SdpaProblem {
  struct Entry {
    int matrix;
    int block;
    int row;
    int col;
    double value;
  };
  int num_constraints{0};
  std::vector<int> block_struct;
  std::vector<double> c;
  std::vector<Entry> entries;
};

/// Our problem is the SDPA dual: Y = X (+) diag(w+, w-), F_0 = -C (+)
/// diag(-c_f, c_f), F_i = A_i (+) diag(F_i, -F_i), c_i = b_i. Entries are
/// merged and sorted by (matrix, block, row, col).
SdpaProblem ToSdpa(const SdpInstance& instance);

/// Reads the SDPA dual as an instance. A diagonal block of size 2k whose
/// second half negates the first in every matrix becomes k free variables;
/// any other diagonal block becomes a run of 1x1 blocks.
SdpInstance FromSdpa(const SdpaProblem& problem);

/// Text with `%.17g` numbers, so Write(Read(Write(p))) == Write(p).
std::string WriteSdpa(const SdpaProblem& problem, const std::string& comment = "");

/// Throws InputError on malformed input.
SdpaProblem ReadSdpa(std::istream& in);

}  // namespace reachbound
