#include "plank/tolerance.hpp"

namespace plank {

Tolerances& tolerances() {
    static Tolerances t;
    return t;
}

}  // namespace plank
