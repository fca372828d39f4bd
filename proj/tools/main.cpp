// Copyright 2026 the rislink authors
// SPDX-License-Identifier: Apache-2.0

#include "rislink/cli.hpp"

int main(int argc, char** argv) { return rislink::cli::run_cli(argc, argv); }
