"""Natural deduction for the second-order and first-order languages."""
