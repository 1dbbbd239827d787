// Copyright 2026 The lard-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lard_forge {

/// Base class for all lard-forge errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally malformed input document (bad header, wrong arity, non-numeric
/// field). The message names the offending row or frame.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a domain invariant. The message names the
/// invariant that failed.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// ECEF point too close to the Earth center for a geodetic inverse.
class NearSingular : public Error {
public:
    using Error::Error;
};

/// Runway geometry unusable for the requested operation (too short, edges not
/// parallel enough).
class DegenerateRunway : public Error {
public:
    using Error::Error;
};

/// Field of view outside (0, 180) degrees.
class InvalidFov : public Error {
public:
    using Error::Error;
};

/// Corner quadrilateral with near-zero area or self-intersecting order.
class DegenerateQuad : public Error {
public:
    using Error::Error;
};

/// Watermark crop bands that exhaust the image.
class InvalidCrop : public Error {
public:
    using Error::Error;
};

/// Required field missing from a structured document.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Field present but non-finite or outside its physical bounds.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure; the message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace lard_forge
