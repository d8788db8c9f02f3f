#include "cosilt/pipeline.hpp"

namespace cosilt {
template int run_pipeline<Rational>(const RunConfig&, const AlgebraFile&, std::ostream&);
}
