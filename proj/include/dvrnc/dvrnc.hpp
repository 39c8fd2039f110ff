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

#ifndef DVRNC_DVRNC_HPP
#define DVRNC_DVRNC_HPP

#include "decode.hpp"
#include "errors.hpp"
#include "fp_poly.hpp"
#include "matrix.hpp"
#include "network.hpp"
#include "ring.hpp"
#include "series.hpp"
#include "simulate.hpp"

#endif  // DVRNC_DVRNC_HPP
