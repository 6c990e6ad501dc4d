package demo.ms2.domain;

import java.util.UUID;
import javax.persistence.Entity;

@Entity
public class Supplier {
    private UUID id;
    private String companyName;
    private String phone;
    private Warehouse warehouse;
}
