#include <ainv/synthesis.hpp>

namespace ainv {

ConstAnalysis::ConstAnalysis(const Program& p) : n_(p.vars()) {
  if (p.sort() != Sort::integer)
    throw Unsupported("the const domain requires an integer-sorted program");
}

AffineAnalysis::AffineAnalysis(const Program& p) : n_(p.vars()) {
  if (p.sort() != Sort::rational)
    throw Unsupported("the affine domain requires a rational-sorted program");
}

} // namespace ainv
