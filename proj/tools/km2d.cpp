// Copyright 2026 The km2d Authors
// SPDX-License-Identifier: Apache-2.0

#include "km2d/cli.hpp"

int main(int argc, char** argv) { return km2d::parse_and_dispatch(argc, argv); }
