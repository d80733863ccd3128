/*
   Copyright 2026 The kmf authors

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

#ifndef KMF_ERRORS_HPP
#define KMF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kmf {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands live over different coefficient fields.
class FieldMismatch : public Error {
   public:
    explicit FieldMismatch(const std::string& what) : Error("FieldMismatch: " + what) {}
};

/// Matrix dimensions incompatible with the requested operation.
class DimMismatch : public Error {
   public:
    explicit DimMismatch(const std::string& what) : Error("DimMismatch: " + what) {}
};

/// Objects live over different ring towers.
class TowerMismatch : public Error {
   public:
    explicit TowerMismatch(const std::string& what) : Error("TowerMismatch: " + what) {}
};

/// A map that was required to be a chain map is not one.
class NotChainMap : public Error {
   public:
    explicit NotChainMap(const std::string& what) : Error("NotChainMap: " + what) {}
};

/// A pair of maps that was required to be a matrix-factorization morphism is not one.
class NotMfMorphism : public Error {
   public:
    explicit NotMfMorphism(const std::string& what) : Error("NotMfMorphism: " + what) {}
};

/// The operation only accepts objects concentrated in few enough degrees.
class NeedsReduction : public Error {
   public:
    explicit NeedsReduction(const std::string& what) : Error("NeedsReduction: " + what) {}
};

/// An identity that the sign conventions guarantee failed to hold.  Never swallowed.
class ConventionViolation : public Error {
   public:
    explicit ConventionViolation(const std::string& what) : Error("ConventionViolation: " + what) {}
};

/// A structural fact guaranteed by the underlying theory failed computationally.
class StructuralViolation : public Error {
   public:
    explicit StructuralViolation(const std::string& what) : Error("StructuralViolation: " + what) {}
};

/// The scalar passed to a twist is not a root of unity of the required order.
class NotARoot : public Error {
   public:
    explicit NotARoot(const std::string& what) : Error("NotARoot: " + what) {}
};

/// An operation was handed an object violating its stated preconditions.
class InvalidObject : public Error {
   public:
    explicit InvalidObject(const std::string& what) : Error("InvalidObject: " + what) {}
};

/// Cooperative cancellation was requested while a long-running algorithm was in flight.
class OperationCancelled : public Error {
   public:
    OperationCancelled() : Error("OperationCancelled") {}
};

/// File or JSON syntax problems; carries enough context to locate the offence.
class ParseError : public Error {
   public:
    explicit ParseError(const std::string& what) : Error("ParseError: " + what) {}
};

}  // namespace kmf

#endif
