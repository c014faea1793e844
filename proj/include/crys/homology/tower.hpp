#pragma once

#include <string>
#include <vector>

#include "crys/homology/fin_ab_group.hpp"
#include "crys/homology/matrix.hpp"

namespace crys {

/// Inverse system A_first <- A_{first+1} <- ... of finite abelian groups.
/// transitions[k] is the map A_{first+k+1} -> A_{first+k} written on the
/// cyclic generators of each level (rows: generators of the target).
struct Tower {
  int first_index = 0;
  std::vector<FinAbGroup> levels;
  std::vector<IntMatrix> transitions;

  void validate() const;
};

struct TowerLimit {
  FinAbGroup limit;
  FinAbGroup lim1;
  std::string lim1_reason;
  /// Index of the first level of the window over which images were stable.
  int stable_from = 0;
  /// Image of the top level in each level, for reporting.
  std::vector<FinAbGroup> stable_images;
};

/// Inverse limit by stabilization of images. A level is settled when the top
/// two levels have the same image in it; the limit is read off the highest run
/// of `window` settled levels whose images map isomorphically onto each other.
/// Throws BoundExceeded when no such run exists.
TowerLimit tower_limit(const Tower &t, int window = 3);

/// Image of the composite A_{from} -> A_{to} (from >= to) as a group.
FinAbGroup tower_image(const Tower &t, int from, int to);

} // namespace crys
