from polymem.core.config import Settings, settings
from polymem.services.chain_service import ChainService
from polymem.services.koszul_service import KoszulService
from polymem.services.membership_service import MembershipService
from polymem.services.osculate_service import OsculateService
from polymem.services.verify_service import VerifyService


def get_membership_service(config: Settings = settings) -> MembershipService:
    return MembershipService(config)


def get_chain_service(config: Settings = settings) -> ChainService:
    return ChainService(config)


def get_koszul_service(config: Settings = settings) -> KoszulService:
    return KoszulService(get_membership_service(config))


def get_osculate_service(config: Settings = settings) -> OsculateService:
    return OsculateService(config, get_membership_service(config))


def get_verify_service(config: Settings = settings) -> VerifyService:
    return VerifyService(
        config,
        get_membership_service(config),
        get_chain_service(config),
        get_koszul_service(config),
        get_osculate_service(config),
    )
