#include "prccsl/corpus.hpp"

#include "prccsl_corpus.hpp"

namespace prccsl {

std::string_view bundled_av_spec() noexcept { return generated::kAvSpec; }

}  // namespace prccsl
