#include "akh/frobenius.hpp"

#include <algorithm>
#include <utility>

#include "akh/errors.hpp"

namespace akh {

namespace {

struct Arity {
  std::size_t in;
  std::size_t out;
};

Arity arity(MapKind kind) {
  switch (kind) {
    case MapKind::Eta:
    case MapKind::EtaDot:
      return {0, 1};
    case MapKind::Epsilon:
    case MapKind::EpsilonDot:
      return {1, 0};
    case MapKind::OneX1:
      return {1, 1};
    case MapKind::Delta:
      return {1, 2};
    case MapKind::Mult:
      return {2, 1};
  }
  return {0, 0};
}

// Values of the map on one basis input, as a list of output label tuples.
std::vector<std::vector<Label>> table(MapKind kind, const std::vector<Label>& in) {
  using L = Label;
  switch (kind) {
    case MapKind::Eta:
      return {{L::One}};
    case MapKind::EtaDot:
      return {{L::X}};
    case MapKind::Epsilon:
      return in[0] == L::X ? std::vector<std::vector<L>>{{}} : std::vector<std::vector<L>>{};
    case MapKind::EpsilonDot:
      return in[0] == L::One ? std::vector<std::vector<L>>{{}} : std::vector<std::vector<L>>{};
    case MapKind::OneX1:
      return in[0] == L::One ? std::vector<std::vector<L>>{{L::X}} : std::vector<std::vector<L>>{};
    case MapKind::Delta:
      if (in[0] == L::One) return {{L::One, L::X}, {L::X, L::One}};
      return {{L::X, L::X}};
    case MapKind::Mult:
      if (in[0] == L::X && in[1] == L::X) return {};
      if (in[0] == L::One && in[1] == L::One) return {{L::One}};
      return {{L::X}};
  }
  return {};
}

}  // namespace

int qdeg(MapKind kind) {
  switch (kind) {
    case MapKind::Eta:
    case MapKind::Epsilon:
      return 1;
    case MapKind::OneX1:
      return -2;
    default:
      return -1;
  }
}

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Eta:
      return "eta";
    case MapKind::EtaDot:
      return "eta_dot";
    case MapKind::Epsilon:
      return "epsilon";
    case MapKind::EpsilonDot:
      return "epsilon_dot";
    case MapKind::OneX1:
      return "one_x1";
    case MapKind::Delta:
      return "delta";
    case MapKind::Mult:
      return "mult";
  }
  return "?";
}

std::vector<Labeling> apply(MapKind kind, const Labeling& l, const std::vector<CircleId>& sources,
                            const std::vector<CircleId>& targets) {
  const Arity a = arity(kind);
  if (sources.size() != a.in || targets.size() != a.out) {
    throw InputError("arity mismatch for " + to_string(kind));
  }
  Labeling rest = l;
  std::vector<Label> in;
  for (auto s : sources) {
    auto it = rest.find(s);
    if (it == rest.end()) throw InputError("source circle " + std::to_string(s) + " is not labeled");
    in.push_back(it->second);
    rest.erase(it);
  }
  for (auto t : targets) {
    if (rest.count(t) != 0) {
      throw InputError("target circle " + std::to_string(t) + " is already labeled");
    }
  }
  if (targets.size() == 2 && targets[0] == targets[1]) throw InputError("repeated target circle");

  // Coefficients live in F_2, so equal outputs cancel in pairs.
  std::map<Labeling, int> parity;
  for (const auto& out : table(kind, in)) {
    Labeling result = rest;
    for (std::size_t k = 0; k < targets.size(); ++k) result[targets[k]] = out[k];
    parity[result] ^= 1;
  }
  std::vector<Labeling> combo;
  for (auto& [lab, odd] : parity) {
    if (odd != 0) combo.push_back(lab);
  }
  return combo;
}

int labeling_qsum(const Labeling& l) {
  int q = 0;
  for (const auto& [id, lab] : l) q += grading(lab);
  return q;
}

char label_char(Label l) { return l == Label::One ? '1' : 'x'; }

}  // namespace akh
