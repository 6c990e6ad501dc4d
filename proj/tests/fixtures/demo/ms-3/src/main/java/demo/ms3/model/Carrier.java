package demo.ms3.model;

import java.util.UUID;
import javax.persistence.Entity;

@Entity
public class Carrier {
    private UUID id;
    private String label;
}
