#pragma once

// Khovanov's Frobenius algebra A = F{1_A, x} over F_2 and its structure maps,
// acting on labelings of circles. Tensor factors are addressed by circle id,
// so there is no positional bookkeeping.

#include <map>
#include <string>
#include <vector>

namespace akh {

enum class Label { One, X };

/// Quantum grading of a basis label: +1 for 1_A, -1 for x.
inline int grading(Label l) { return l == Label::One ? 1 : -1; }

enum class MapKind { Eta, EtaDot, Epsilon, EpsilonDot, OneX1, Delta, Mult };

int qdeg(MapKind kind);
std::string to_string(MapKind kind);

using CircleId = int;
using Labeling = std::map<CircleId, Label>;

/// Applies `kind` to the tensor factors named by `sources`, producing new
/// factors named by `targets`; every other circle keeps its label. Returns the
/// F_2 combination as a sorted list of distinct basis labelings.
/// Arities: eta/eta_dot 0->1, epsilon/epsilon_dot 1->0, one_x1 1->1,
/// delta 1->2, mult 2->1.
std::vector<Labeling> apply(MapKind kind, const Labeling& l, const std::vector<CircleId>& sources,
                            const std::vector<CircleId>& targets);

int labeling_qsum(const Labeling& l);

/// "1" / "x" string for a label.
char label_char(Label l);

}  // namespace akh
