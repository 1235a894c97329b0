#pragma once

#include <exception>
#include <ostream>

#include "snake/cli.hpp"
#include "snake/errors.hpp"

namespace snake::cli {

/// Runs body and maps library exceptions onto process exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        body();
        return kOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kBadConfig;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kModelFailure;
    }
}

}  // namespace snake::cli
