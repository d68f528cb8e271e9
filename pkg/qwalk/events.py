class WalkEvents:
    """Event type constants"""

    # Diagnostics
    CLOSED_FORM_MISMATCH = "walk.closed_form_mismatch"
    LARGE_SEQUENCE_VALUE = "walk.large_sequence_value"

    # Verification
    CERTIFICATE_ISSUED = "walk.certificate_issued"

    # Sweeps
    SWEEP_POINT_DONE = "walk.sweep_point_done"
    SWEEP_POINT_FAILED = "walk.sweep_point_failed"
