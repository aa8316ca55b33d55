#include "arborab/obstruct/certificate.hpp"

namespace arborab::obstruct {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Abelian: return "Abelian";
    case Verdict::NonAbelian: return "NonAbelian";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

const char* reason_name(const Reason& reason) {
  static constexpr const char* names[] = {"SpecialPair",      "SquareClassWitness", "LocalSieveWitness",
                                          "BackwardTransfer", "TheoreticalPCF",     "KummerWitness",
                                          "CapExhausted"};
  return names[reason.index()];
}

}  // namespace arborab::obstruct
