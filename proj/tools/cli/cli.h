// Copyright 2026 The amgae Authors.
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

#include <ostream>

namespace amgae::cli {

// Runs one `amgae` invocation. Returns the process exit status; progress goes
// to `log`, errors to `err`.
int Run(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

// Raises glibc's mmap and trim thresholds so the large N x N temporaries of a
// training step are recycled from the heap instead of being mapped afresh.
void TuneAllocator();

}  // namespace amgae::cli
