"""k3fib: elliptic fibrations on K3 double covers of rational elliptic surfaces."""
