from rbf_wavelets.cli import ActionCommand


class Command(ActionCommand):
    """
    rbf-wavelets transform <action> [--config PATH] [--out DIR] [--param KEY=VALUE ...]
    """
    help = 'Continuous B, K and time-space transforms, their inverses, and transform calibration.'
    group = 'transform'
