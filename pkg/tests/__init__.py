# Tests for theta-instantons
