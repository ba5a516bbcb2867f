// Copyright 2026 The vdclab Authors
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

#ifndef VDC_CLI_H
#define VDC_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace vdc::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kPreconditionViolation = 3,
    kIdentityAlarm = 4,
    kIoError = 5,
};

/// Runs `vdclab <command> [flags]`. `args` excludes the program name.
/// Output files go where --out points; everything else is written to `out`
/// (data) and `err` (diagnostics).
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace vdc::cli

#endif
