// Copyright 2026 The photoprune Authors
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

#ifndef PHOTOPRUNE_SPECIAL_HPP
#define PHOTOPRUNE_SPECIAL_HPP

namespace photoprune {

/// Upper incomplete gamma function Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt
/// for any real s and x >= 0, including s <= 0 where it is reached by the
/// downward recurrence Gamma(s, x) = (Gamma(s+1, x) - x^s e^{-x}) / s.
/// Relative accuracy is ~1e-13 over the range the fits use.
/// Returns +inf for x == 0, s <= 0. Throws DomainError for x < 0.
double upper_incomplete_gamma(double s, double x);

/// log Gamma(s, x), evaluated without forming Gamma(s, x) when x is large
/// enough that the value would underflow.
double log_upper_incomplete_gamma(double s, double x);

}  // namespace photoprune

#endif
