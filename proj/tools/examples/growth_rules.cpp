// Copyright 2026 The tprs Authors
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

// Asks the growth algebra which advantages are negligible for a linear-time
// observer and what resource a low-resource ensemble must still carry.

#include <cstdio>

#include "tprs/tprs.hpp"

int main() {
  using namespace tprs;
  const GrowthClass T = GrowthClass::linear();
  for (const char* eta : {"1/n", "1/(n*log2(n))", "2^(-n)"}) {
    const auto r = is_negligible(BoundExpr::parse(eta), T);
    std::printf("%-16s negligible for %s: %s\n", eta, T.name().c_str(), to_string(r.verdict).c_str());
  }

  const auto repeat = check_repetition_consistency(T, GrowthClass::linear());
  std::printf("linear repetitions: %s (%s)\n", repeat.holds ? "consistent" : "inconsistent", repeat.rule.c_str());

  for (double n : {16.0, 256.0})
    std::printf("n = %g: coherence >= %.3f, entanglement >= %.3f\n", n,
                table_lower_bound(T, TableMeasure::Coherence, n), table_lower_bound(T, TableMeasure::Entanglement, n));
}
