#include "cosilt/pipeline.hpp"

namespace cosilt {
template int run_pipeline<Fp<5>>(const RunConfig&, const AlgebraFile&, std::ostream&);
}
