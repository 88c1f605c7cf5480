// Copyright 2026 The qclock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qclock {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParameter : Error {
    using Error::Error;
};

/// A mode was referenced that the state does not register, or a channel was
/// asked to act on a mode it may not touch.
struct RegistryError : Error {
    using Error::Error;
};

/// Beam splitter inputs that cannot interfere (different frequency bins).
struct InvalidPairing : Error {
    using Error::Error;
};

struct EmptyProjection : Error {
    using Error::Error;
};

/// The first-order redshift expansion is not valid for the requested heights.
struct OutOfRegime : Error {
    using Error::Error;
};

/// Flat spacetime or degenerate bins: the interference phase never moves.
struct NoCollapse : Error {
    using Error::Error;
};

struct NoZero : Error {
    using Error::Error;
};

struct InvalidGrid : Error {
    using Error::Error;
};

/// Requested work exceeds what the exact Fock engine supports (N > N_max).
struct CapabilityError : Error {
    using Error::Error;
};

}  // namespace qclock
