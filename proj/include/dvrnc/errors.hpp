/*
   Copyright 2026 The dvrnc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DVRNC_ERRORS_HPP
#define DVRNC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dvrnc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands belong to different rings, or matrix dimensions do not fit.
class RingMismatchError : public Error {
   public:
    using Error::Error;
};

/// Division or inversion required a unit (valuation 0) and did not get one.
class NotAUnitError : public Error {
   public:
    using Error::Error;
};

/// Malformed input: element literal, network file, message file, flag value.
class ParseError : public Error {
   public:
    using Error::Error;
};

/// The code has a cycle whose coefficients are all units.
class CausalityViolationError : public Error {
   public:
    using Error::Error;
};

/// A non-source node without incoming channels has no received matrix.
class EmptyReceiverError : public Error {
   public:
    using Error::Error;
};

/// The received matrix does not attain full rank; no delay can help.
class NotDecodableError : public Error {
   public:
    using Error::Error;
};

/// The requested delay is below the minimum decoding delay.
class DelayTooSmallError : public Error {
   public:
    using Error::Error;
};

/// A truncated coding matrix holds fewer terms than the delay requires.
class InsufficientTruncationError : public Error {
   public:
    using Error::Error;
};

/// Received data is not consistent with any message stream.
class InconsistentStreamError : public Error {
   public:
    using Error::Error;
};

/// Decoder steps were supplied out of order.
class SequenceError : public Error {
   public:
    using Error::Error;
};

}  // namespace dvrnc

#endif  // DVRNC_ERRORS_HPP
