// Copyright 2026 The owcnot Authors
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

// Runs the CNOT pattern on a few inputs with sampled outcomes and prints the
// byproduct exponents and corrected fidelity of each run.

#include <cstdio>

#include "owc/owc.hpp"

int main() {
    using namespace owc;
    const InputQubitState inputs[] = {InputQubitState::zero(), InputQubitState::one(), InputQubitState::plus(),
                                      primary_binding()};
    const char *names[] = {"|0>", "|1>", "|+>", "0.6|0>+0.8i|1>"};
    std::uint64_t seed = 7;
    for (int c = 0; c < 4; ++c) {
        for (int t = 0; t < 4; ++t) {
            auto r = cnot::run_cnot(inputs[c], inputs[t], SampledOutcomes{seed++});
            std::printf("%-16s %-16s outcomes %s  exponents %s  fidelity %.12f\n", names[c], names[t],
                        r.outcomes.bit_string().c_str(), r.predicted.to_string().c_str(), r.predicted_fidelity);
        }
    }
}
