#include "cosilt/pipeline.hpp"

namespace cosilt {
template int run_pipeline<Fp<3>>(const RunConfig&, const AlgebraFile&, std::ostream&);
}
