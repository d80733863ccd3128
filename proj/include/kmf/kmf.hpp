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

// Umbrella header: exact dg-module calculus over ramified towers k[t] -> k[s]
// and the matrix-factorization model of the singularity category.

#ifndef KMF_KMF_HPP
#define KMF_KMF_HPP

#include "errors.hpp"      // IWYU pragma: export
#include "field.hpp"       // IWYU pragma: export
#include "poly.hpp"        // IWYU pragma: export
#include "matrix.hpp"      // IWYU pragma: export
#include "snf.hpp"         // IWYU pragma: export
#include "tower.hpp"       // IWYU pragma: export
#include "modules.hpp"     // IWYU pragma: export
#include "morphisms.hpp"   // IWYU pragma: export
#include "hom_complex.hpp" // IWYU pragma: export
#include "functors.hpp"    // IWYU pragma: export
#include "mf.hpp"          // IWYU pragma: export
#include "sing.hpp"        // IWYU pragma: export

#endif
