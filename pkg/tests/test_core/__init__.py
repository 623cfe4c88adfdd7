# Tests for monobs.core
