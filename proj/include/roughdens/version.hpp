#pragma once

#define ROUGHDENS_VERSION "0.1.0"
