// Copyright 2026 The xshadow Authors
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

#ifndef XSHADOW_ERRORS_H
#define XSHADOW_ERRORS_H

#include <stdexcept>
#include <string>

namespace xshadow {

/// An operation was asked for something the object cannot provide, e.g. an
/// exact table above the enumeration cap or a dense operator for too many
/// qubits.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The direction set does not span the single-qubit operator space.
struct NotInformationallyCompleteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Fourier component of the twirled noise is too small to divide by.
struct UnmitigatableComponentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The transition matrix has no inverse.
struct SingularNoiseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace xshadow

#endif
