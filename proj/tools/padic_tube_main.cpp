#include "padic/config.hpp"
#include "padic/errors.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    try {
        const auto config = padic::cli::parse_config(argc, argv);
        if (!config)
            return 0; // --help printed
        return padic::cli::run(*config);
    } catch (const padic::cli::UsageError& e) {
        std::cerr << "padic-tube: " << e.what() << "\n";
        return 2;
    } catch (const padic::ValidationError& e) {
        std::cerr << "padic-tube: invalid system: " << e.what() << "\n";
        return 3;
    } catch (const padic::ConvergenceError& e) {
        std::cerr << "padic-tube: numerical non-convergence: " << e.what()
                  << " (try --precision 256 or a larger --truncation)\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "padic-tube: internal error: " << e.what() << "\n";
        return 1;
    }
}
