#include <cstdlib>
#include <iostream>

#include "msg/acceptance.hpp"

// One PASS/FAIL line per criterion; optional argv[1] overrides the seed.
int main(int argc, char** argv) {
    msg::AcceptanceOptions opts;
    if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
    bool all = true;
    for (const auto& r : msg::run_acceptance(opts)) {
        std::cout << msg::format_result(r) << std::endl;
        all &= r.pass;
    }
    return all ? 0 : 1;
}
