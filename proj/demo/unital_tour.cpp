// Walks through the library on small unitals: builds them, finds arcs,
// evaluates the isoperimetric number and prints a certified witness.

#include <iostream>

#include "uniso/uniso.hpp"

using namespace uniso;

namespace {

void show(const std::string& name, const Design& d) {
  const auto n = *d.unital_order();
  const std::uint64_t fc = floor_c(n);
  const auto arc = find_arc(d, std::max<std::uint64_t>(3, fc));
  std::cout << name << ": " << d.params().to_string() << ", n = " << n << ", floor c(n) = " << fc << "\n";
  if (arc.status != ArcStatus::found) {
    std::cout << "  no arc of size " << fc << "\n";
    return;
  }
  const Certificate cert = construct_extremal_set(d, arc.arc);
  const BoundReport b = cert.checks.bounds;
  std::cout << "  arc of size " << arc.arc.size() << (is_complete_arc(d, arc.arc) ? " (complete)" : "") << "\n"
            << "  witness |S| = " << cert.checks.s << ", |N(S)| = " << cert.checks.n_s << ", ratio "
            << to_string(cert.claimed) << "\n"
            << "  bounds [" << to_string(b.lower) << ", " << to_string(b.upper) << "]"
            << (b.pinch ? ", pinched" : "") << "\n"
            << "  non-incidence value " << to_string(theorem2_value(n)) << "\n";
}

}  // namespace

int main() {
  const Design u2 = construct_order2_unital();
  const IsoResult r = brute_force_iso(IsoGraph(u2, Flavor::incidence));
  std::cout << "order-2 unital by enumeration: " << to_string(r.ratio) << "\n";
  show("order-2 unital", u2);
  show("H(3)", construct_hermitian(3));
  show("BM(3), alpha 4, beta 0", construct_bm(3, 4, 0));
  show("H(4)", construct_hermitian(4));
}
