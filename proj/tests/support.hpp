#pragma once

#include <string>

#include "orbitkit/error.hpp"

// Kind of the DomainError thrown by fn, or "" when nothing is thrown.
template <class F>
std::string error_kind(F&& fn) {
    try {
        fn();
    } catch (const orbitkit::DomainError& e) {
        return e.kind();
    }
    return "";
}
