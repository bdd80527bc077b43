from rbf_wavelets.cli import ActionCommand


class Command(ActionCommand):
    """
    rbf-wavelets specfun <action> [--config PATH] [--out DIR] [--param KEY=VALUE ...]
    """
    help = 'Evaluate Bessel functions of real order or find the zeros of J.'
    group = 'specfun'
