#include "orthent/acceptance.hpp"

#include <iostream>

int main() {
    bool ok = true;
    for (const auto& r : orthent::run_acceptance()) {
        std::cout << orthent::format_criterion(r) << std::endl;
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
