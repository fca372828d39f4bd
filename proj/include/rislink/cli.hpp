// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Physical quantities cross this boundary in the
// units people quote them in (dBm, dB, MHz); everything behind it is linear
// SI. Exit codes: 0 success, 2 invalid arguments or parameter domain,
// 3 a computation refused to converge to the requested accuracy.
#pragma once

namespace rislink::cli {

int run_cli(int argc, const char* const* argv);

}  // namespace rislink::cli
