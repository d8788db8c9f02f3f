#include "cosilt/pipeline.hpp"

namespace cosilt {
template int run_pipeline<Fp<2>>(const RunConfig&, const AlgebraFile&, std::ostream&);
}
