#include "scheme_forge/gf9.hpp"

namespace scheme_forge {

std::ostream& operator<<(std::ostream& os, GF9 x) {
    if (x.c1() == 0)
        return os << x.c0();
    if (x.c0() == 0)
        return os << (x.c1() == 1 ? "w" : "2w");
    return os << x.c0() << '+' << (x.c1() == 1 ? "w" : "2w");
}

} // namespace scheme_forge
