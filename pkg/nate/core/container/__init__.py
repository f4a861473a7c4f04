__all__ = [
    "BootConfiguration",
    "NateContainer",
    "boot_configuration",
]


from .nate import BootConfiguration, NateContainer, boot_configuration
