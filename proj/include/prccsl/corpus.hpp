#pragma once

#include <string_view>

namespace prccsl {

/// Text of the bundled vehicle relation corpus (specs/av.prccsl).
std::string_view bundled_av_spec() noexcept;

}  // namespace prccsl
