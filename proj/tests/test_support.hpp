#ifndef ZYGMUND_TEST_SUPPORT_HPP
#define ZYGMUND_TEST_SUPPORT_HPP

#include "zygmund/random_poly.hpp"

namespace zygmund::testing {
using zygmund::random_poly;
using zygmund::random_self_map;
} // namespace zygmund::testing

#endif
