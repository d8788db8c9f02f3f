#include "cosilt/pipeline.hpp"

namespace cosilt {
template int run_pipeline<Fp<7>>(const RunConfig&, const AlgebraFile&, std::ostream&);
}
